// stochroute: generate instances, solve them, compute VSS, plot tours and
// run the bays29 suite. Exit codes: 0 certified, 2 time-limited, 1 error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "report.hpp"
#include "stochroute/branch_and_cut.hpp"
#include "stochroute/generator.hpp"
#include "stochroute/serialization.hpp"
#include "stochroute/tsplib.hpp"
#include "stochroute/vss.hpp"

namespace fs = std::filesystem;
using namespace stochroute;
using report::Json;

namespace {

constexpr int kCertified = 0;
constexpr int kError = 1;
constexpr int kTimeLimited = 2;

std::pair<double, double> parse_range(const std::string& text, const char* flag) {
  const auto colon = text.find(':', 1);
  if (colon == std::string::npos) throw CLI::ValidationError(flag, "expected LO:HI, got '" + text + "'");
  try {
    std::size_t used = 0;
    const double lo = std::stod(text.substr(0, colon), &used);
    const double hi = std::stod(text.substr(colon + 1));
    if (lo > hi) throw CLI::ValidationError(flag, "LO must not exceed HI");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw CLI::ValidationError(flag, "expected LO:HI, got '" + text + "'");
  }
}

struct GenerateFlags {
  std::string tsplib;
  int vehicles = 1;
  int required = 0;
  bool suite = false;
  int scenarios = 100;
  std::uint64_t seed = 2024;
  std::string service_range = "5:15";
  std::string tau_bar_offset = "-3:3";
  double gamma = 1000.0;

  GenerationConfig config() const {
    GenerationConfig c;
    c.service_range = parse_range(service_range, "--service-range");
    c.tau_bar_offset = parse_range(tau_bar_offset, "--tau-bar-offset");
    c.gamma = gamma;
    return c;
  }
};

struct SolveFlags {
  double time_limit = 3600.0;
  double gap = 1e-6;
  std::string cuts_per_component = "one";
  std::string fractional = "depth-policy";
  int node_log = 0;

  Params params() const {
    Params p;
    p.time_limit = time_limit;
    p.rel_gap = gap;
    p.cuts_per_component = cuts_per_component == "all" ? AnchorPolicy::All : AnchorPolicy::Strongest;
    p.fractional = fractional == "off"  ? FractionalSeparation::Off
                   : fractional == "on" ? FractionalSeparation::Always
                                        : FractionalSeparation::DepthPolicy;
    p.node_log_interval = node_log;
    p.progress = node_log > 0 ? &std::cerr : nullptr;
    return p;
  }
};

void add_generation_flags(CLI::App* cmd, GenerateFlags& g) {
  cmd->add_option("--scenarios", g.scenarios, "Number of equiprobable scenarios")->capture_default_str();
  cmd->add_option("--seed", g.seed, "Random seed")->capture_default_str();
  cmd->add_option("--service-range", g.service_range, "Service-time range LO:HI")->capture_default_str();
  cmd->add_option("--tau-bar-offset", g.tau_bar_offset, "Offset range LO:HI for the service budget")
      ->capture_default_str();
  cmd->add_option("--gamma", g.gamma, "Penalty per unit of excess service time")->capture_default_str();
}

void add_solver_flags(CLI::App* cmd, SolveFlags& s) {
  cmd->add_option("--time-limit", s.time_limit, "Seconds per branch-and-cut solve")->capture_default_str();
  cmd->add_option("--gap", s.gap, "Relative optimality gap")->capture_default_str();
  cmd->add_option("--cuts-per-component", s.cuts_per_component, "Connectivity cuts per violated set")
      ->check(CLI::IsMember({"one", "all"}))
      ->capture_default_str();
  cmd->add_option("--fractional", s.fractional, "Fractional separation policy")
      ->check(CLI::IsMember({"on", "off", "depth-policy"}))
      ->capture_default_str();
  cmd->add_option("--node-log", s.node_log, "Progress line to stderr every N nodes (0: silent)");
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

Json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return Json::parse(in);
}

std::string base_name(const std::string& tsplib_path, const TsplibDocument& doc) {
  return doc.name.empty() ? fs::path(tsplib_path).stem().string() : doc.name;
}

std::vector<Instance> generate(const GenerateFlags& g) {
  const TsplibDocument doc = load_tsplib_file(g.tsplib);
  const std::string base = base_name(g.tsplib, doc);
  const GenerationConfig config = g.config();
  std::vector<Instance> out;
  if (g.suite) {
    for (auto [n, f] : report::suite_grid())
      out.push_back(generate_instance(doc.nodes, base, n, f, g.scenarios, g.seed, config));
  } else {
    out.push_back(generate_instance(doc.nodes, base, g.vehicles, g.required, g.scenarios, g.seed, config));
  }
  return out;
}

// Rebuilds the cumulative tables from every VSS record in `dir`.
void write_tables(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().string().ends_with(".vss.json")) files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<Json> records;
  for (const auto& f : files) records.push_back(read_json(f));
  write_text(dir / "vss_table.md", report::vss_table_markdown(records));
  write_text(dir / "vss_table.csv", report::vss_table_csv(records));
  write_text(dir / "time_table.md", report::time_table_markdown(records));
  write_text(dir / "time_table.csv", report::time_table_csv(records));
  write_text(dir / "cuts.csv", report::cuts_csv(records));
  write_text(dir / "extra_time.csv", report::extra_time_csv(records));
}

void print_solve(const Json& r) {
  std::cout << r["instance"].get<std::string>() << " [" << r["mode"].get<std::string>()
            << "] status=" << r["status"].get<std::string>() << " objective=" << r["objective"]
            << " first_stage=" << r["first_stage_cost"] << " penalty=" << r["expected_penalty"]
            << " gap=" << r["gap"] << " nodes=" << r["nodes"] << " cuts=" << r["cuts_added"]
            << " seconds=" << r["timing"]["wall_seconds"] << "\n";
}

void print_vss(const Json& r) {
  std::cout << r["instance"].get<std::string>() << " S*=" << r["s_star"] << " D*=" << r["d_star"]
            << " VSS=" << r["vss"] << " certified=" << (r["certified"].get<bool>() ? "yes" : "no") << "\n";
}

// Solves both models, writes both solve records, the VSS record, the
// stochastic tour plot and the refreshed tables.
bool run_vss(const Instance& in, const Params& params, const fs::path& out) {
  const VssReport r = compute_vss(in, params);
  const Json rec = report::vss_record(in, r, params);
  const Json s = report::solve_record(in, r.stochastic, params);
  const Json e = report::solve_record(in, r.expected_value, params);
  write_text(out / (in.name + ".stochastic.json"), s.dump(2) + "\n");
  write_text(out / (in.name + ".evp.json"), e.dump(2) + "\n");
  write_text(out / (in.name + ".vss.json"), rec.dump(2) + "\n");
  if (!r.stochastic.tours.empty()) write_text(out / (in.name + ".stochastic.svg"), report::render_svg(in, s));
  if (!r.expected_value.tours.empty()) write_text(out / (in.name + ".evp.svg"), report::render_svg(in, e));
  write_tables(out);
  print_vss(rec);
  return r.certified;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact two-stage stochastic multi-vehicle Dubins path planning"};
  app.require_subcommand(1);

  GenerateFlags gen;
  SolveFlags sol;
  std::string out_dir = ".";

  auto* generate_cmd = app.add_subcommand("generate", "Generate instances from a TSPLIB file");
  generate_cmd->add_option("tsplib", gen.tsplib, "TSPLIB file")->required()->check(CLI::ExistingFile);
  generate_cmd->add_option("-n,--vehicles", gen.vehicles, "Number of vehicles")->capture_default_str();
  generate_cmd->add_option("-f,--required", gen.required, "Required targets per vehicle")->capture_default_str();
  generate_cmd->add_flag("--suite", gen.suite, "Emit the 13-instance grid (n = 1..5, f in {1, 3, 5})");
  add_generation_flags(generate_cmd, gen);
  generate_cmd->add_option("--out", out_dir, "Output directory")->capture_default_str();

  std::string instance_path, mode = "stochastic";
  auto* solve_cmd = app.add_subcommand("solve", "Solve one instance by branch-and-cut");
  solve_cmd->add_option("instance", instance_path, "Instance file")->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("--mode", mode, "Model to solve")
      ->check(CLI::IsMember({"stochastic", "evp"}))
      ->capture_default_str();
  add_solver_flags(solve_cmd, sol);
  solve_cmd->add_option("--out", out_dir, "Output directory")->capture_default_str();

  auto* vss_cmd = app.add_subcommand("vss", "Value of the stochastic solution for one instance");
  vss_cmd->add_option("instance", instance_path, "Instance file")->required()->check(CLI::ExistingFile);
  add_solver_flags(vss_cmd, sol);
  vss_cmd->add_option("--out", out_dir, "Output directory (tables are rebuilt from all VSS records here)")
      ->capture_default_str();

  std::string record_path, svg_path;
  auto* plot_cmd = app.add_subcommand("plot", "Draw a solve record's tours as SVG");
  plot_cmd->add_option("instance", instance_path, "Instance file")->required()->check(CLI::ExistingFile);
  plot_cmd->add_option("record", record_path, "Solve record from 'solve'")->required()->check(CLI::ExistingFile);
  plot_cmd->add_option("--out", svg_path, "SVG file (default: record path with .svg)");

  auto* suite_cmd = app.add_subcommand("suite", "Generate the 13-instance grid and run VSS on each");
  suite_cmd->add_option("tsplib", gen.tsplib, "TSPLIB file")->required()->check(CLI::ExistingFile);
  add_generation_flags(suite_cmd, gen);
  add_solver_flags(suite_cmd, sol);
  suite_cmd->add_option("--out", out_dir, "Output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kCertified : kError;
  }

  try {
    const fs::path out(out_dir);
    if (*generate_cmd) {
      for (const Instance& in : generate(gen)) {
        const fs::path file = out / (in.name + ".json");
        fs::create_directories(out);
        write_instance_file(in, file.string());
        std::cout << file.string() << "\n";
      }
      return kCertified;
    }
    if (*solve_cmd) {
      const Instance in = read_instance_file(instance_path);
      const Params params = sol.params();
      const Solution s = solve(in, params, mode == "evp" ? ModelKind::ExpectedValue : ModelKind::Stochastic);
      const Json rec = report::solve_record(in, s, params);
      write_text(out / (in.name + "." + mode + ".json"), rec.dump(2) + "\n");
      print_solve(rec);
      return s.certified() ? kCertified : kTimeLimited;
    }
    if (*vss_cmd) {
      const Instance in = read_instance_file(instance_path);
      return run_vss(in, sol.params(), out) ? kCertified : kTimeLimited;
    }
    if (*plot_cmd) {
      const Instance in = read_instance_file(instance_path);
      const Json rec = read_json(record_path);
      const fs::path target = svg_path.empty() ? fs::path(record_path).replace_extension(".svg") : fs::path(svg_path);
      write_text(target, report::render_svg(in, rec));
      std::cout << target.string() << "\n";
      return kCertified;
    }
    if (*suite_cmd) {
      gen.suite = true;
      bool all = true;
      fs::create_directories(out);
      for (const Instance& in : generate(gen)) {
        write_instance_file(in, (out / (in.name + ".json")).string());
        all = run_vss(in, sol.params(), out) && all;
      }
      std::cout << "\n" << report::vss_table_markdown([&] {
        std::vector<Json> records;
        for (auto [n, f] : report::suite_grid()) {
          const fs::path p = out / (base_name(gen.tsplib, load_tsplib_file(gen.tsplib)) + "-" + std::to_string(n) +
                                    "-" + std::to_string(f) + ".vss.json");
          records.push_back(read_json(p));
        }
        return records;
      }());
      return all ? kCertified : kTimeLimited;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
