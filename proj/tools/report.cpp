#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "stochroute/dubins.hpp"

namespace stochroute::report {

namespace {

std::string fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// Non-finite values (no incumbent, no bound yet) are written as null.
Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }
double number_at(const Json& j, const char* key) {
  const Json& v = j.at(key);
  return v.is_null() ? INFINITY : v.get<double>();
}

int required_per_vehicle(const Instance& in) {
  if (in.provenance) return in.provenance->required_per_vehicle;
  std::size_t f = 0;
  for (const auto& r : in.required) f = std::max(f, r.size());
  return static_cast<int>(f);
}

Json stats_json(const Solution& s) {
  Json j;
  j["status"] = to_string(s.status);
  j["certified"] = s.certified();
  j["objective"] = number(s.objective);
  j["first_stage_cost"] = number(s.first_stage_cost);
  j["expected_penalty"] = number(s.expected_penalty);
  j["bound"] = number(s.bound);
  j["gap"] = number(s.gap);
  j["nodes"] = s.stats.nodes;
  j["cuts_added"] = s.stats.cuts_added;
  j["integer_separations"] = s.stats.integer_separations;
  j["fractional_separations"] = s.stats.fractional_separations;
  j["lp_iterations"] = s.stats.lp_iterations;
  j["root_bound"] = number(s.stats.root_bound);
  return j;
}

// Table order: vehicles, then required targets, then name.
void sort_records(std::vector<Json>& records) {
  std::stable_sort(records.begin(), records.end(), [](const Json& a, const Json& b) {
    const auto ka = std::make_tuple(a.at("vehicles").get<int>(), a.at("required_per_vehicle").get<int>(),
                                    a.at("instance").get<std::string>());
    const auto kb = std::make_tuple(b.at("vehicles").get<int>(), b.at("required_per_vehicle").get<int>(),
                                    b.at("instance").get<std::string>());
    return ka < kb;
  });
}

void check_vss_records(const std::vector<Json>& records) {
  for (const Json& r : records)
    if (r.value("format", "") != kVssFormat) throw std::invalid_argument("table input is not a VSS record");
}

std::string cell(const Json& r, const char* key) { return r.at(key).is_null() ? "-" : fixed(number_at(r, key)); }

std::string markdown(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream out;
  out << "|";
  for (const auto& h : header) out << " " << h << " |";
  out << "\n|";
  for (std::size_t c = 0; c < header.size(); ++c) out << (c == 0 ? " :--- |" : " ---: |");
  out << "\n";
  for (const auto& row : rows) {
    out << "|";
    for (const auto& v : row) out << " " << v << " |";
    out << "\n";
  }
  return out.str();
}

std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream out;
  for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
    out << "\n";
  }
  return out.str();
}

std::vector<std::vector<std::string>> time_rows(std::vector<Json> records) {
  check_vss_records(records);
  sort_records(records);
  std::vector<std::vector<std::string>> rows;
  for (const Json& r : records)
    rows.push_back({r.at("instance").get<std::string>(), fixed(r.at("timing").at("stochastic_seconds").get<double>()),
                    fixed(r.at("timing").at("evp_seconds").get<double>()),
                    std::to_string(r.at("stochastic").at("nodes").get<long long>()),
                    std::to_string(r.at("stochastic").at("cuts_added").get<long long>()),
                    r.at("certified").get<bool>() ? "yes" : "no"});
  return rows;
}

const std::vector<std::string> kTimeHeader{"instance", "stochastic_s", "evp_s", "nodes", "cuts", "certified"};
const std::vector<std::string> kVssHeader{"instance", "D*", "S*", "VSS"};

std::vector<std::vector<std::string>> vss_rows(std::vector<Json> records) {
  check_vss_records(records);
  sort_records(records);
  std::vector<std::vector<std::string>> rows;
  for (const Json& r : records)
    rows.push_back({r.at("instance").get<std::string>(), cell(r, "d_star"), cell(r, "s_star"), cell(r, "vss")});
  return rows;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

}  // namespace

std::vector<std::pair<int, int>> suite_grid() {
  std::vector<std::pair<int, int>> grid{{1, 0}};
  for (int n = 2; n <= 5; ++n)
    for (int f : {1, 3, 5}) grid.emplace_back(n, f);
  return grid;
}

const char* mode_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::Stochastic: return "stochastic";
    case ModelKind::ExpectedValue: return "evp";
    case ModelKind::Generic: break;
  }
  return "generic";
}

Json params_json(const Params& p) {
  Json j;
  j["time_limit"] = p.time_limit;
  j["rel_gap"] = p.rel_gap;
  j["cuts_per_component"] = p.cuts_per_component == AnchorPolicy::All ? "all" : "one";
  const char* frac = p.fractional == FractionalSeparation::Off ? "off"
                     : p.fractional == FractionalSeparation::Always ? "on"
                                                                    : "depth-policy";
  j["fractional_separation"] = frac;
  return j;
}

Json solve_record(const Instance& in, const Solution& s, const Params& params) {
  Json j;
  j["format"] = kSolveFormat;
  j["version"] = 1;
  j["instance"] = in.name;
  j["vehicles"] = static_cast<int>(in.num_vehicles());
  j["required_per_vehicle"] = required_per_vehicle(in);
  j["targets"] = static_cast<int>(in.num_targets());
  j["scenarios"] = static_cast<int>(in.num_scenarios());
  j["mode"] = mode_name(s.kind);
  j["params"] = params_json(params);
  j.update(stats_json(s));
  j["tours"] = s.tours;
  j["owner"] = s.owner;
  j["timing"] = {{"wall_seconds", s.stats.wall_seconds}};
  return j;
}

Json vss_record(const Instance& in, const VssReport& r, const Params& params) {
  Json j;
  j["format"] = kVssFormat;
  j["version"] = 1;
  j["instance"] = in.name;
  j["vehicles"] = static_cast<int>(in.num_vehicles());
  j["required_per_vehicle"] = required_per_vehicle(in);
  j["params"] = params_json(params);
  j["certified"] = r.certified;
  j["s_star"] = number(r.s_star);
  j["d_star"] = number(r.d_star);
  j["vss"] = number(r.vss);
  j["evp_objective"] = number(r.evp_objective);
  j["s_first_stage"] = number(r.s_first_stage);
  j["d_first_stage"] = number(r.d_first_stage);
  j["s_penalty"] = number(r.s_penalty);
  j["d_penalty"] = number(r.d_penalty);
  j["s_bound"] = number(r.s_bound);
  j["evp_bound"] = number(r.evp_bound);
  j["stochastic"] = stats_json(r.stochastic);
  j["expected_value"] = stats_json(r.expected_value);
  j["timing"] = {{"stochastic_seconds", r.s_seconds}, {"evp_seconds", r.evp_seconds}};
  return j;
}

Solution solution_from_record(const Json& record) {
  if (record.value("format", "") != kSolveFormat) throw std::invalid_argument("not a solve record");
  Solution s;
  s.kind = record.at("mode").get<std::string>() == "evp" ? ModelKind::ExpectedValue : ModelKind::Stochastic;
  s.tours = record.at("tours").get<std::vector<std::vector<int>>>();
  s.owner = record.at("owner").get<std::vector<int>>();
  s.first_stage_cost = number_at(record, "first_stage_cost");
  s.expected_penalty = number_at(record, "expected_penalty");
  s.objective = number_at(record, "objective");
  s.bound = number_at(record, "bound");
  s.gap = number_at(record, "gap");
  s.status = record.at("certified").get<bool>() ? SolveStatus::Optimal : SolveStatus::TimeLimit;
  return s;
}

std::string time_table_markdown(std::vector<Json> records) { return markdown(kTimeHeader, time_rows(std::move(records))); }
std::string time_table_csv(std::vector<Json> records) { return csv(kTimeHeader, time_rows(std::move(records))); }
std::string vss_table_markdown(std::vector<Json> records) { return markdown(kVssHeader, vss_rows(std::move(records))); }
std::string vss_table_csv(std::vector<Json> records) { return csv(kVssHeader, vss_rows(std::move(records))); }

std::string cuts_csv(std::vector<Json> records) {
  check_vss_records(records);
  sort_records(records);
  std::vector<std::vector<std::string>> rows;
  for (const Json& r : records)
    rows.push_back({r.at("instance").get<std::string>(),
                    std::to_string(r.at("stochastic").at("cuts_added").get<long long>()),
                    std::to_string(r.at("expected_value").at("cuts_added").get<long long>())});
  return csv({"instance", "stochastic_cuts", "evp_cuts"}, rows);
}

std::string extra_time_csv(std::vector<Json> records) {
  check_vss_records(records);
  sort_records(records);
  std::vector<std::vector<std::string>> rows;
  for (const Json& r : records) {
    const double s = r.at("timing").at("stochastic_seconds").get<double>();
    const double e = r.at("timing").at("evp_seconds").get<double>();
    rows.push_back({r.at("instance").get<std::string>(), fixed(s - e)});
  }
  return csv({"instance", "extra_seconds"}, rows);
}

namespace {

double plot_step(const Instance& in, double requested) {
  if (requested > 0) return requested;
  double r = INFINITY;
  for (const Vehicle& v : in.vehicles) r = std::min(r, v.turn_radius);
  return r / 20.0;
}

std::vector<Point2> tour_curve(const Instance& in, std::size_t k, const std::vector<int>& tour, double step) {
  std::vector<Point2> pts;
  const double radius = in.vehicles[k].turn_radius;
  for (std::size_t p = 0; p + 1 < tour.size(); ++p) {
    const Pose& a = in.vertex_pose(tour[p]);
    const Pose& b = in.vertex_pose(tour[p + 1]);
    auto seg = sample_path(shortest_path(a, b, radius), a, step);
    pts.insert(pts.end(), seg.begin() + (pts.empty() ? 0 : 1), seg.end());
  }
  return pts;
}

double polyline_length(const std::vector<Point2>& pts) {
  double len = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) len += std::hypot(pts[i].x - pts[i - 1].x, pts[i].y - pts[i - 1].y);
  return len;
}

void check_fit(const Instance& in, const Solution& s, const Json& record) {
  if (record.at("instance").get<std::string>() != in.name)
    throw std::invalid_argument("record is for instance '" + record.at("instance").get<std::string>() + "', not '" +
                                in.name + "'");
  if (s.tours.size() != in.num_vehicles()) throw std::invalid_argument("record vehicle count does not match instance");
  const int vertices = static_cast<int>(in.num_targets() + in.num_vehicles());
  for (std::size_t k = 0; k < s.tours.size(); ++k) {
    const auto& t = s.tours[k];
    if (t.empty()) continue;
    if (t.size() < 3 || t.front() != in.depot_vertex(k) || t.back() != in.depot_vertex(k))
      throw std::invalid_argument("tour " + std::to_string(k) + " does not start and end at its depot");
    for (int v : t)
      if (v < 0 || v >= vertices) throw std::invalid_argument("tour vertex out of range");
  }
}

}  // namespace

double sampled_tour_length(const Instance& in, const Solution& s, double step) {
  double total = 0.0;
  for (std::size_t k = 0; k < s.tours.size(); ++k) total += polyline_length(tour_curve(in, k, s.tours[k], step));
  return total;
}

std::string render_svg(const Instance& in, const Json& record, const PlotOptions& options) {
  const Solution s = solution_from_record(record);
  check_fit(in, s, record);
  const double step = plot_step(in, options.step);

  std::vector<std::vector<Point2>> curves;
  for (std::size_t k = 0; k < s.tours.size(); ++k) curves.push_back(tour_curve(in, k, s.tours[k], step));

  double minx = INFINITY, maxx = -INFINITY, miny = INFINITY, maxy = -INFINITY;
  auto extend = [&](double x, double y) {
    minx = std::min(minx, x), maxx = std::max(maxx, x);
    miny = std::min(miny, y), maxy = std::max(maxy, y);
  };
  for (const Pose& p : in.targets) extend(p.x, p.y);
  for (const Pose& p : in.depots) extend(p.x, p.y);
  for (const auto& c : curves)
    for (const Point2& p : c) extend(p.x, p.y);
  const double extent = std::max({maxx - minx, maxy - miny, 1e-9});
  const double margin = 0.05 * extent;
  const double scale = options.width / (maxx - minx + 2 * margin);
  const double height = (maxy - miny + 2 * margin) * scale;
  auto px = [&](double x) { return fixed((x - minx + margin) * scale, 3); };
  auto py = [&](double y) { return fixed((maxy - y + margin) * scale, 3); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(options.width, 0) << "\" height=\""
      << fixed(height, 0) << "\" viewBox=\"0 0 " << fixed(options.width, 3) << " " << fixed(height, 3) << "\">\n";
  out << "<title>" << in.name << " (" << record.at("mode").get<std::string>() << ")</title>\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  double total = 0.0;
  out << "<g id=\"tours\" fill=\"none\" stroke-width=\"2\">\n";
  for (std::size_t k = 0; k < curves.size(); ++k) {
    if (curves[k].empty()) continue;
    const double len = polyline_length(curves[k]);
    total += len;
    out << "<polyline id=\"tour-" << k << "\" stroke=\"" << kPalette[k % 8] << "\" data-length=\"" << fixed(len, 3)
        << "\" points=\"";
    for (std::size_t i = 0; i < curves[k].size(); ++i)
      out << (i ? " " : "") << px(curves[k][i].x) << "," << py(curves[k][i].y);
    out << "\"/>\n";
  }
  out << "</g>\n";

  const double glyph = 0.025 * extent;
  out << "<g id=\"targets\" fill=\"black\" stroke=\"black\" stroke-width=\"1\">\n";
  for (std::size_t i = 0; i < in.num_targets(); ++i) {
    const Pose& p = in.targets[i];
    out << "<circle cx=\"" << px(p.x) << "\" cy=\"" << py(p.y) << "\" r=\"3\"/>";
    out << "<line x1=\"" << px(p.x) << "\" y1=\"" << py(p.y) << "\" x2=\"" << px(p.x + glyph * std::cos(p.theta))
        << "\" y2=\"" << py(p.y + glyph * std::sin(p.theta)) << "\"/>\n";
  }
  out << "</g>\n";

  out << "<g id=\"depots\" stroke-width=\"1.5\">\n";
  for (std::size_t k = 0; k < in.num_vehicles(); ++k) {
    const Pose& p = in.depot_pose(k);
    out << "<rect x=\"" << fixed((p.x - minx + margin) * scale - 6, 3) << "\" y=\""
        << fixed((maxy - p.y + margin) * scale - 6, 3) << "\" width=\"12\" height=\"12\" fill=\"white\" stroke=\""
        << kPalette[k % 8] << "\"/>";
    out << "<line x1=\"" << px(p.x) << "\" y1=\"" << py(p.y) << "\" x2=\"" << px(p.x + 1.5 * glyph * std::cos(p.theta))
        << "\" y2=\"" << py(p.y + 1.5 * glyph * std::sin(p.theta)) << "\" stroke=\"" << kPalette[k % 8] << "\"/>\n";
  }
  out << "</g>\n";

  out << "<text id=\"length\" x=\"10\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\" data-length=\""
      << fixed(total, 3) << "\">length " << fixed(total, 2) << "</text>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace stochroute::report
