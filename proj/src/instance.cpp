#include "stochroute/instance.hpp"

#include <cmath>
#include <set>
#include <string>

namespace stochroute {

ScenarioSet::ScenarioSet(std::size_t targets, std::size_t vehicles, std::size_t scenarios)
    : targets_(targets), vehicles_(vehicles), tau_(targets * vehicles * scenarios, 0.0),
      prob_(scenarios, scenarios > 0 ? 1.0 / static_cast<double>(scenarios) : 0.0) {}

double ScenarioSet::expected_tau(std::size_t target, std::size_t vehicle) const {
  double sum = 0.0;
  for (std::size_t w = 0; w < prob_.size(); ++w) sum += prob_[w] * tau(target, vehicle, w);
  return sum;
}

const Pose& Instance::vertex_pose(int vertex) const {
  const auto v = static_cast<std::size_t>(vertex);
  if (v < targets.size()) return targets[v];
  return depot_pose(v - targets.size());
}

int Instance::required_owner(std::size_t target) const {
  for (std::size_t k = 0; k < required.size(); ++k)
    for (int t : required[k])
      if (static_cast<std::size_t>(t) == target) return static_cast<int>(k);
  return -1;
}

std::vector<Pose> Instance::vehicle_poses(std::size_t vehicle) const {
  std::vector<Pose> poses(targets);
  poses.push_back(depot_pose(vehicle));
  return poses;
}

namespace {

std::string at(const std::string& field, std::size_t index) {
  return field + "[" + std::to_string(index) + "]";
}

}  // namespace

void validate(const Instance& in) {
  const std::size_t nt = in.num_targets();
  const std::size_t nk = in.num_vehicles();

  if (nk == 0) throw ValidationError("vehicles", "at least one vehicle is required");
  if (in.depots.size() != nk)
    throw ValidationError("depots", "depot count must equal vehicle count");

  std::set<int> used_depots;
  for (std::size_t k = 0; k < nk; ++k) {
    const Vehicle& v = in.vehicles[k];
    if (v.depot < 0 || static_cast<std::size_t>(v.depot) >= in.depots.size())
      throw ValidationError(at("vehicles", k) + ".depot", "depot index out of range");
    if (!used_depots.insert(v.depot).second)
      throw ValidationError(at("vehicles", k) + ".depot", "vehicles must use distinct depots");
    if (!(v.turn_radius > 0.0) || !std::isfinite(v.turn_radius))
      throw ValidationError(at("vehicles", k) + ".turn_radius", "must be positive and finite");
    if (!(v.gamma >= 0.0) || !std::isfinite(v.gamma))
      throw ValidationError(at("vehicles", k) + ".gamma", "must be non-negative and finite");
  }

  if (in.required.size() != nk)
    throw ValidationError("required", "one required-target list per vehicle");
  std::set<int> seen;
  for (std::size_t k = 0; k < nk; ++k) {
    for (int t : in.required[k]) {
      if (t < 0 || static_cast<std::size_t>(t) >= nt)
        throw ValidationError(at("required", k), "target id out of range");
      if (!seen.insert(t).second)
        throw ValidationError(at("required", k), "required-target sets must be pairwise disjoint");
    }
  }

  const ScenarioSet& sc = in.scenarios;
  if (sc.num_scenarios() == 0) throw ValidationError("scenarios.count", "at least one scenario");
  if (sc.num_targets() != nt || sc.num_vehicles() != nk)
    throw ValidationError("scenarios.service_times", "tensor shape must be [targets][vehicles][scenarios]");
  double total = 0.0;
  for (std::size_t w = 0; w < sc.num_scenarios(); ++w) {
    const double p = sc.prob(w);
    if (!(p >= 0.0) || !std::isfinite(p))
      throw ValidationError(at("scenarios.probabilities", w), "must be non-negative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw ValidationError("scenarios.probabilities", "must sum to 1 (got " + std::to_string(total) + ")");
  for (std::size_t i = 0; i < nt; ++i)
    for (std::size_t k = 0; k < nk; ++k)
      for (std::size_t w = 0; w < sc.num_scenarios(); ++w) {
        const double t = sc.tau(i, k, w);
        if (!(t >= 0.0) || !std::isfinite(t))
          throw ValidationError(at("scenarios.service_times", i), "service times must be non-negative");
      }

  if (in.tau_bar.size() != nt * nk)
    throw ValidationError("tau_bar", "matrix shape must be [targets][vehicles]");
  for (std::size_t i = 0; i < in.tau_bar.size(); ++i)
    if (!std::isfinite(in.tau_bar[i])) throw ValidationError(at("tau_bar", i / nk), "must be finite");

  for (std::size_t i = 0; i < nt; ++i) {
    const Pose& p = in.targets[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw ValidationError(at("targets", i), "coordinates must be finite");
  }
}

std::vector<CostMatrix> vehicle_cost_matrices(const Instance& instance) {
  std::vector<CostMatrix> costs;
  costs.reserve(instance.num_vehicles());
  for (std::size_t k = 0; k < instance.num_vehicles(); ++k) {
    const auto poses = instance.vehicle_poses(k);
    costs.push_back(cost_matrix(poses, instance.vehicles[k].turn_radius));
  }
  return costs;
}

}  // namespace stochroute
