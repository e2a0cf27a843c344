#include "stochroute/exact_oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "stochroute/recourse.hpp"

namespace stochroute {

namespace {

struct BestTour {
  double cost = 0.0;
  std::vector<int> order;  ///< targets in visiting order
};

// Cheapest depot tour through `mask` for one vehicle, by trying every order.
BestTour enumerate_tour(const CostMatrix& c, std::size_t depot, unsigned mask) {
  std::vector<int> order;
  for (int i = 0; mask >> i; ++i)
    if (mask >> i & 1u) order.push_back(i);
  BestTour best;
  if (order.empty()) return best;
  best.cost = INFINITY;
  do {
    double cost = c(depot, static_cast<std::size_t>(order.front()));
    for (std::size_t p = 1; p < order.size(); ++p)
      cost += c(static_cast<std::size_t>(order[p - 1]), static_cast<std::size_t>(order[p]));
    cost += c(static_cast<std::size_t>(order.back()), depot);
    if (cost < best.cost) {
      best.cost = cost;
      best.order = order;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

}  // namespace

Solution brute_force_solve(const Instance& in, ModelKind kind) {
  validate(in);
  const auto start = std::chrono::steady_clock::now();
  const std::size_t nt = in.num_targets(), nk = in.num_vehicles();
  if (nt > kOracleMaxTargets) throw OracleGuardError("brute_force_solve: more than 9 targets");
  std::vector<std::size_t> common;
  Assignment owner(nt, -1);
  for (std::size_t i = 0; i < nt; ++i) {
    owner[i] = in.required_owner(i);
    if (owner[i] < 0) common.push_back(i);
  }
  if (std::pow(static_cast<double>(nk), static_cast<double>(common.size())) > kOracleMaxAssignments)
    throw OracleGuardError("brute_force_solve: more than 1e6 assignments");

  const auto costs = vehicle_cost_matrices(in);
  std::vector<std::unordered_map<unsigned, BestTour>> cache(nk);
  auto tour_of = [&](std::size_t k, unsigned mask) -> const BestTour& {
    auto it = cache[k].find(mask);
    if (it == cache[k].end()) it = cache[k].emplace(mask, enumerate_tour(costs[k], nt, mask)).first;
    return it->second;
  };

  double best = INFINITY;
  Assignment best_owner;
  std::vector<std::size_t> digit(common.size(), 0);
  while (true) {
    for (std::size_t c = 0; c < common.size(); ++c) owner[common[c]] = static_cast<int>(digit[c]);
    std::vector<unsigned> mask(nk, 0u);
    for (std::size_t i = 0; i < nt; ++i) mask[static_cast<std::size_t>(owner[i])] |= 1u << i;
    double travel = 0.0;
    for (std::size_t k = 0; k < nk; ++k) travel += tour_of(k, mask[k]).cost;
    const double total = travel + model_penalty(in, owner, kind);
    if (total < best) {
      best = total;
      best_owner = owner;
    }
    // Odometer with the last common target varying fastest.
    std::size_t c = common.size();
    while (c > 0 && ++digit[c - 1] == nk) digit[--c] = 0;
    if (c == 0) break;
  }

  Solution s;
  s.status = SolveStatus::Optimal;
  s.kind = kind;
  s.owner = best_owner;
  s.tours.assign(nk, {});
  for (std::size_t k = 0; k < nk; ++k) {
    unsigned mask = 0;
    for (std::size_t i = 0; i < nt; ++i)
      if (best_owner[i] == static_cast<int>(k)) mask |= 1u << i;
    if (mask == 0) continue;
    const BestTour& t = tour_of(k, mask);
    s.tours[k].push_back(in.depot_vertex(k));
    s.tours[k].insert(s.tours[k].end(), t.order.begin(), t.order.end());
    s.tours[k].push_back(in.depot_vertex(k));
  }
  s.first_stage_cost = tours_cost(in, costs, s.tours);
  s.excess = excess_matrix(in, best_owner, kind);
  s.expected_penalty = model_penalty(in, best_owner, kind);
  s.objective = s.first_stage_cost + s.expected_penalty;
  s.bound = s.objective;
  s.gap = 0.0;
  s.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return s;
}

MinCut brute_force_min_cut(const FlowGraph& g, int s, int t) {
  const int n = g.num_vertices;
  if (n > kOracleMaxCutVertices) throw OracleGuardError("brute_force_min_cut: more than 10 vertices");
  if (s == t || s < 0 || t < 0 || s >= n || t >= n) throw std::invalid_argument("brute_force_min_cut: bad terminals");
  std::vector<int> free;
  for (int v = 0; v < n; ++v)
    if (v != s && v != t) free.push_back(v);
  MinCut best;
  best.value = INFINITY;
  for (unsigned mask = 0; mask < (1u << free.size()); ++mask) {
    std::vector<int> sink{t};
    for (std::size_t b = 0; b < free.size(); ++b)
      if (mask >> b & 1u) sink.push_back(free[b]);
    std::sort(sink.begin(), sink.end());
    const double value = cut_capacity(g, sink);
    const bool better = value < best.value ||
                        (value == best.value && (sink.size() < best.sink_side.size() ||
                                                 (sink.size() == best.sink_side.size() && sink < best.sink_side)));
    if (better) {
      best.value = value;
      best.sink_side = std::move(sink);
    }
  }
  return best;
}

}  // namespace stochroute
