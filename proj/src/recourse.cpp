#include "stochroute/recourse.hpp"

#include <algorithm>
#include <string>

namespace stochroute {

const char* to_string(SolveStatus status) noexcept {
  switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::TimeLimit: return "time_limit";
    case SolveStatus::NodeFailure: return "node_failure";
  }
  return "unknown";
}

void check_assignment(const Instance& in, const Assignment& owner) {
  if (owner.size() != in.num_targets()) throw std::invalid_argument("assignment: one owner per target required");
  const auto nk = static_cast<int>(in.num_vehicles());
  for (std::size_t i = 0; i < owner.size(); ++i) {
    if (owner[i] < 0 || owner[i] >= nk)
      throw std::invalid_argument("assignment: target " + std::to_string(i) + " has no valid vehicle");
    const int req = in.required_owner(i);
    if (req >= 0 && req != owner[i])
      throw std::invalid_argument("assignment: target " + std::to_string(i) + " is required by vehicle " +
                                  std::to_string(req));
  }
}

std::vector<double> recourse_value(const Instance& in, const Assignment& owner, std::size_t w) {
  check_assignment(in, owner);
  std::vector<double> z(in.num_vehicles(), 0.0);
  for (std::size_t i = 0; i < owner.size(); ++i) {
    const auto k = static_cast<std::size_t>(owner[i]);
    z[k] += in.scenarios.tau(i, k, w) - in.cap(i, k);
  }
  for (double& v : z) v = std::max(0.0, v);
  return z;
}

double expected_penalty(const Instance& in, const Assignment& owner) {
  check_assignment(in, owner);
  double total = 0.0;
  for (std::size_t w = 0; w < in.num_scenarios(); ++w) {
    const auto z = recourse_value(in, owner, w);
    double s = 0.0;
    for (std::size_t k = 0; k < z.size(); ++k) s += in.vehicles[k].gamma * z[k];
    total += in.scenarios.prob(w) * s;
  }
  return total;
}

double evp_penalty(const Instance& in, const Assignment& owner) {
  check_assignment(in, owner);
  std::vector<double> z(in.num_vehicles(), 0.0);
  for (std::size_t i = 0; i < owner.size(); ++i) {
    const auto k = static_cast<std::size_t>(owner[i]);
    z[k] += in.scenarios.expected_tau(i, k) - in.cap(i, k);
  }
  double total = 0.0;
  for (std::size_t k = 0; k < z.size(); ++k) total += in.vehicles[k].gamma * std::max(0.0, z[k]);
  return total;
}

double model_penalty(const Instance& in, const Assignment& owner, ModelKind kind) {
  return kind == ModelKind::ExpectedValue ? evp_penalty(in, owner) : expected_penalty(in, owner);
}

std::vector<std::vector<double>> excess_matrix(const Instance& in, const Assignment& owner, ModelKind kind) {
  check_assignment(in, owner);
  const std::size_t nk = in.num_vehicles();
  if (kind == ModelKind::ExpectedValue) {
    std::vector<std::vector<double>> z(nk, std::vector<double>(1, 0.0));
    for (std::size_t i = 0; i < owner.size(); ++i) {
      const auto k = static_cast<std::size_t>(owner[i]);
      z[k][0] += in.scenarios.expected_tau(i, k) - in.cap(i, k);
    }
    for (auto& row : z) row[0] = std::max(0.0, row[0]);
    return z;
  }
  std::vector<std::vector<double>> z(nk, std::vector<double>(in.num_scenarios(), 0.0));
  for (std::size_t w = 0; w < in.num_scenarios(); ++w) {
    const auto v = recourse_value(in, owner, w);
    for (std::size_t k = 0; k < nk; ++k) z[k][w] = v[k];
  }
  return z;
}

namespace {

// Vehicle-local id for a global vertex: targets keep theirs, the depot is |T|.
std::size_t local_id(const Instance& in, std::size_t vehicle, int vertex) {
  if (vertex >= 0 && static_cast<std::size_t>(vertex) < in.num_targets()) return static_cast<std::size_t>(vertex);
  if (vertex == in.depot_vertex(vehicle)) return in.num_targets();
  throw InfeasibleFirstStage("depot", "vertex " + std::to_string(vertex) + " is not reachable by vehicle " +
                                          std::to_string(vehicle));
}

}  // namespace

double tours_cost(const Instance& in, const std::vector<CostMatrix>& costs, const std::vector<std::vector<int>>& tours) {
  double total = 0.0;
  for (std::size_t k = 0; k < tours.size(); ++k)
    for (std::size_t p = 1; p < tours[k].size(); ++p)
      total += costs[k](local_id(in, k, tours[k][p - 1]), local_id(in, k, tours[k][p]));
  return total;
}

ObjectiveSplit objective_split(const Instance& in, const Solution& s) {
  return objective_split(in, vehicle_cost_matrices(in), s);
}

ObjectiveSplit objective_split(const Instance& in, const std::vector<CostMatrix>& costs, const Solution& s) {
  return {tours_cost(in, costs, s.tours), expected_penalty(in, s.owner)};
}

FirstStage first_stage_of(const Solution& s) {
  FirstStage fs;
  fs.owner = s.owner;
  fs.arcs.resize(s.tours.size());
  for (std::size_t k = 0; k < s.tours.size(); ++k)
    for (std::size_t p = 1; p < s.tours[k].size(); ++p) fs.arcs[k].emplace_back(s.tours[k][p - 1], s.tours[k][p]);
  return fs;
}

std::vector<std::vector<int>> reconstruct_tours(const Instance& in, const FirstStage& fs) {
  try {
    check_assignment(in, fs.owner);
  } catch (const std::invalid_argument& e) {
    throw InfeasibleFirstStage("assignment", e.what());
  }
  const std::size_t nk = in.num_vehicles(), nt = in.num_targets();
  if (fs.arcs.size() != nk) throw InfeasibleFirstStage("assignment", "arc lists for every vehicle required");
  std::vector<std::vector<int>> tours(nk);
  for (std::size_t k = 0; k < nk; ++k) {
    std::vector<int> succ(nt + 1, -1), indeg(nt + 1, 0);
    for (auto [u, v] : fs.arcs[k]) {
      const std::size_t a = local_id(in, k, u), b = local_id(in, k, v);
      if (a == b) throw InfeasibleFirstStage("degree", "self-loop at vertex " + std::to_string(u));
      if (succ[a] >= 0) throw InfeasibleFirstStage("degree", "vertex " + std::to_string(u) + " has out-degree > 1");
      succ[a] = static_cast<int>(b);
      if (++indeg[b] > 1) throw InfeasibleFirstStage("degree", "vertex " + std::to_string(v) + " has in-degree > 1");
    }
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < nt; ++i) {
      const bool mine = fs.owner[i] == static_cast<int>(k);
      assigned += mine ? 1 : 0;
      if ((succ[i] >= 0) != mine || (indeg[i] == 1) != mine)
        throw InfeasibleFirstStage("degree", "target " + std::to_string(i) + " degree does not match assignment to vehicle " +
                                                 std::to_string(k));
    }
    if (assigned == 0) {
      if (succ[nt] >= 0 || indeg[nt] > 0) throw InfeasibleFirstStage("depot", "idle vehicle has depot arcs");
      continue;
    }
    if (succ[nt] < 0 || indeg[nt] != 1)
      throw InfeasibleFirstStage("depot", "vehicle " + std::to_string(k) + " does not leave and return to its depot");
    std::vector<int>& tour = tours[k];
    tour.push_back(in.depot_vertex(k));
    std::size_t v = static_cast<std::size_t>(succ[nt]);
    while (v != nt) {
      tour.push_back(static_cast<int>(v));
      v = static_cast<std::size_t>(succ[v]);
    }
    tour.push_back(in.depot_vertex(k));
    if (tour.size() != assigned + 2)
      throw InfeasibleFirstStage("subtour", "vehicle " + std::to_string(k) + " tour misses " +
                                                std::to_string(assigned + 2 - tour.size()) + " assigned targets");
  }
  return tours;
}

FixedEvaluation evaluate_fixed_first_stage(const Instance& in, const FirstStage& fs) {
  return evaluate_fixed_first_stage(in, vehicle_cost_matrices(in), fs);
}

FixedEvaluation evaluate_fixed_first_stage(const Instance& in, const std::vector<CostMatrix>& costs,
                                           const FirstStage& fs) {
  FixedEvaluation out;
  out.tours = reconstruct_tours(in, fs);
  out.first_stage_cost = tours_cost(in, costs, out.tours);
  out.expected_penalty = expected_penalty(in, fs.owner);
  out.total = out.first_stage_cost + out.expected_penalty;
  return out;
}

}  // namespace stochroute
