#include "stochroute/serialization.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace stochroute {

using nlohmann::json;

namespace {

json pose_json(std::size_t id, const Pose& p) {
  return json{{"id", id}, {"x", p.x}, {"y", p.y}, {"theta", p.theta}};
}

const json& field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw ValidationError(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(path + "." + key, "missing field");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ValidationError(path, "expected a number");
  return j.get<double>();
}

long long integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ValidationError(path, "expected an integer");
  return j.get<long long>();
}

const json& array(const json& j, const std::string& path, std::optional<std::size_t> size = std::nullopt) {
  if (!j.is_array()) throw ValidationError(path, "expected an array");
  if (size && j.size() != *size)
    throw ValidationError(path, "expected " + std::to_string(*size) + " entries, got " + std::to_string(j.size()));
  return j;
}

std::string idx(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

std::vector<Pose> read_poses(const json& root, const char* key) {
  const std::string path = key;
  const json& list = array(field(root, key, ""), path);
  std::vector<Pose> poses;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string p = idx(path, i);
    if (integer(field(list[i], "id", p), p + ".id") != static_cast<long long>(i))
      throw ValidationError(p + ".id", "ids must be consecutive from 0");
    poses.emplace_back(number(field(list[i], "x", p), p + ".x"), number(field(list[i], "y", p), p + ".y"),
                       number(field(list[i], "theta", p), p + ".theta"));
  }
  return poses;
}

std::pair<double, double> read_range(const json& j, const std::string& path) {
  const json& a = array(j, path, 2);
  return {number(a[0], idx(path, 0)), number(a[1], idx(path, 1))};
}

}  // namespace

std::string save_instance(const Instance& in) {
  json root;
  root["format"] = "stochroute-instance";
  root["version"] = kInstanceFormatVersion;
  root["name"] = in.name;

  json targets = json::array();
  for (std::size_t i = 0; i < in.targets.size(); ++i) targets.push_back(pose_json(i, in.targets[i]));
  root["targets"] = std::move(targets);
  json depots = json::array();
  for (std::size_t i = 0; i < in.depots.size(); ++i) depots.push_back(pose_json(i, in.depots[i]));
  root["depots"] = std::move(depots);

  json vehicles = json::array();
  for (std::size_t k = 0; k < in.vehicles.size(); ++k) {
    const Vehicle& v = in.vehicles[k];
    vehicles.push_back({{"id", k}, {"depot", v.depot}, {"turn_radius", v.turn_radius}, {"gamma", v.gamma}});
  }
  root["vehicles"] = std::move(vehicles);
  root["required"] = in.required;

  const ScenarioSet& sc = in.scenarios;
  json tau = json::array();
  for (std::size_t i = 0; i < sc.num_targets(); ++i) {
    json per_target = json::array();
    for (std::size_t k = 0; k < sc.num_vehicles(); ++k) {
      std::vector<double> values(sc.num_scenarios());
      for (std::size_t w = 0; w < values.size(); ++w) values[w] = sc.tau(i, k, w);
      per_target.push_back(values);
    }
    tau.push_back(std::move(per_target));
  }
  root["scenarios"] = {{"count", sc.num_scenarios()}, {"probabilities", sc.probabilities()},
                       {"service_times", std::move(tau)}};

  json caps = json::array();
  for (std::size_t i = 0; i < in.num_targets(); ++i) {
    std::vector<double> row(in.num_vehicles());
    for (std::size_t k = 0; k < row.size(); ++k) row[k] = in.cap(i, k);
    caps.push_back(row);
  }
  root["tau_bar"] = std::move(caps);

  if (in.provenance) {
    const Provenance& p = *in.provenance;
    root["provenance"] = {{"source", p.source},
                          {"seed", p.seed},
                          {"vehicles", p.vehicles},
                          {"required_per_vehicle", p.required_per_vehicle},
                          {"service_range", {p.config.service_range.first, p.config.service_range.second}},
                          {"tau_bar_offset", {p.config.tau_bar_offset.first, p.config.tau_bar_offset.second}},
                          {"gamma", p.config.gamma}};
  }
  return root.dump(1) + "\n";
}

Instance load_instance(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError("$", std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) throw ValidationError("$", "expected an object");
  if (integer(field(root, "version", ""), "version") != kInstanceFormatVersion)
    throw ValidationError("version", "unsupported format version");

  Instance in;
  const json& name = field(root, "name", "");
  if (!name.is_string()) throw ValidationError("name", "expected a string");
  in.name = name.get<std::string>();
  in.targets = read_poses(root, "targets");
  in.depots = read_poses(root, "depots");

  const json& vehicles = array(field(root, "vehicles", ""), "vehicles");
  for (std::size_t k = 0; k < vehicles.size(); ++k) {
    const std::string p = idx("vehicles", k);
    Vehicle v;
    v.depot = static_cast<int>(integer(field(vehicles[k], "depot", p), p + ".depot"));
    v.turn_radius = number(field(vehicles[k], "turn_radius", p), p + ".turn_radius");
    v.gamma = number(field(vehicles[k], "gamma", p), p + ".gamma");
    in.vehicles.push_back(v);
  }
  const std::size_t nt = in.targets.size();
  const std::size_t nk = in.vehicles.size();

  const json& required = array(field(root, "required", ""), "required", nk);
  in.required.resize(nk);
  for (std::size_t k = 0; k < nk; ++k) {
    const json& list = array(required[k], idx("required", k));
    for (std::size_t j = 0; j < list.size(); ++j)
      in.required[k].push_back(static_cast<int>(integer(list[j], idx(idx("required", k), j))));
  }

  const json& sc = field(root, "scenarios", "");
  const long long count = integer(field(sc, "count", "scenarios"), "scenarios.count");
  if (count < 1) throw ValidationError("scenarios.count", "at least one scenario");
  const auto nw = static_cast<std::size_t>(count);
  in.scenarios = ScenarioSet(nt, nk, nw);
  const json& probs = array(field(sc, "probabilities", "scenarios"), "scenarios.probabilities", nw);
  for (std::size_t w = 0; w < nw; ++w) in.scenarios.prob(w) = number(probs[w], idx("scenarios.probabilities", w));
  const json& tau = array(field(sc, "service_times", "scenarios"), "scenarios.service_times", nt);
  for (std::size_t i = 0; i < nt; ++i) {
    const std::string pi = idx("scenarios.service_times", i);
    const json& per_target = array(tau[i], pi, nk);
    for (std::size_t k = 0; k < nk; ++k) {
      const std::string pk = idx(pi, k);
      const json& values = array(per_target[k], pk, nw);
      for (std::size_t w = 0; w < nw; ++w) in.scenarios.tau(i, k, w) = number(values[w], idx(pk, w));
    }
  }

  const json& caps = array(field(root, "tau_bar", ""), "tau_bar", nt);
  in.tau_bar.assign(nt * nk, 0.0);
  for (std::size_t i = 0; i < nt; ++i) {
    const json& row = array(caps[i], idx("tau_bar", i), nk);
    for (std::size_t k = 0; k < nk; ++k) in.cap(i, k) = number(row[k], idx(idx("tau_bar", i), k));
  }

  if (const auto it = root.find("provenance"); it != root.end() && !it->is_null()) {
    const json& pj = *it;
    Provenance p;
    const json& source = field(pj, "source", "provenance");
    if (!source.is_string()) throw ValidationError("provenance.source", "expected a string");
    p.source = source.get<std::string>();
    const json& seed = field(pj, "seed", "provenance");
    if (!seed.is_number_unsigned() && !seed.is_number_integer())
      throw ValidationError("provenance.seed", "expected an integer");
    p.seed = seed.get<std::uint64_t>();
    p.vehicles = static_cast<int>(integer(field(pj, "vehicles", "provenance"), "provenance.vehicles"));
    p.required_per_vehicle = static_cast<int>(
        integer(field(pj, "required_per_vehicle", "provenance"), "provenance.required_per_vehicle"));
    p.config.service_range = read_range(field(pj, "service_range", "provenance"), "provenance.service_range");
    p.config.tau_bar_offset = read_range(field(pj, "tau_bar_offset", "provenance"), "provenance.tau_bar_offset");
    p.config.gamma = number(field(pj, "gamma", "provenance"), "provenance.gamma");
    in.provenance = p;
  }

  validate(in);
  return in;
}

void write_instance_file(const Instance& instance, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << save_instance(instance);
}

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_instance(buffer.str());
}

}  // namespace stochroute
