#include "stochroute/exact_oracle.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "stochroute/recourse.hpp"
#include "support/fixed_lp.hpp"
#include "support/random_instance.hpp"

namespace stochroute {
namespace {

Instance relabel(const Instance& in, const std::vector<int>& perm) {
  Instance out = in;
  const std::size_t nk = in.num_vehicles();
  for (std::size_t i = 0; i < in.num_targets(); ++i) {
    const auto to = static_cast<std::size_t>(perm[i]);
    out.targets[to] = in.targets[i];
    for (std::size_t k = 0; k < nk; ++k) {
      out.tau_bar[to * nk + k] = in.tau_bar[i * nk + k];
      for (std::size_t w = 0; w < in.num_scenarios(); ++w) out.scenarios.tau(to, k, w) = in.scenarios.tau(i, k, w);
    }
  }
  for (auto& r : out.required) {
    for (int& t : r) t = perm[static_cast<std::size_t>(t)];
    std::ranges::sort(r);
  }
  return out;
}

TEST(BruteForceSolve, Guards) {
  EXPECT_THROW((void)brute_force_solve(testing::random_instance(1, 10, 1, 0, 1)), OracleGuardError);
  EXPECT_NO_THROW((void)brute_force_solve(testing::random_instance(1, 6, 1, 0, 1)));
}

TEST(BruteForceSolve, SingleTargetRoundTrip) {
  const Instance in = testing::random_instance(4, 1, 1, 0, 3);
  const Solution s = brute_force_solve(in);
  const auto costs = in.vehicle_poses(0);
  const double there = shortest_path(costs[1], costs[0], in.vehicles[0].turn_radius).length;
  const double back = shortest_path(costs[0], costs[1], in.vehicles[0].turn_radius).length;
  EXPECT_NEAR(s.first_stage_cost, there + back, 1e-9);
  EXPECT_EQ(s.tours[0], (std::vector<int>{1, 0, 1}));
  EXPECT_EQ(s.status, SolveStatus::Optimal);
}

TEST(BruteForceSolve, RelabelInvariant) {
  Rng rng(6);
  for (int trial = 0; trial < 8; ++trial) {
    const Instance in = testing::random_instance(40 + trial, 6, 2, 1, 4);
    std::vector<int> perm(6);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = perm.size() - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
    const double a = brute_force_solve(in).objective, b = brute_force_solve(relabel(in, perm)).objective;
    EXPECT_NEAR(a, b, 1e-9 * a);
  }
}

TEST(BruteForceSolve, NoAssignmentBeatsIt) {
  Rng rng(15);
  const Instance in = testing::random_instance(70, 5, 2, 1, 5);
  const Solution best = brute_force_solve(in);
  EXPECT_NEAR(best.objective, best.first_stage_cost + best.expected_penalty, 1e-9);
  EXPECT_NEAR(best.expected_penalty, expected_penalty(in, best.owner), 1e-9);
  for (int t = 0; t < 50; ++t) {
    const auto lp = testing::fixed_first_stage_lp(in, testing::random_assignment(in, rng));
    EXPECT_GE(lp.objective, best.objective - 1e-9);
  }
  const Solution evp = brute_force_solve(in, ModelKind::ExpectedValue);
  EXPECT_NEAR(evp.expected_penalty, evp_penalty(in, evp.owner), 1e-9);
  EXPECT_LE(evp.objective, evaluate_fixed_first_stage(in, first_stage_of(best)).first_stage_cost +
                               evp_penalty(in, best.owner) + 1e-9);
}

TEST(BruteForceMinCut, FractionalExample) {
  // d=0, a=1, b=2, c=3
  FlowGraph g(4);
  g.add_arc(0, 1, 0.5);
  g.add_arc(1, 0, 0.5);
  g.add_arc(1, 2, 0.5);
  g.add_arc(2, 1, 0.5);
  g.add_arc(2, 3, 1.0);
  g.add_arc(3, 2, 1.0);
  const auto cut = brute_force_min_cut(g, 0, 3);
  EXPECT_DOUBLE_EQ(cut.value, 0.5);
  // {b, c} and {a, b, c} both cost 0.5; the smaller sink side wins
  EXPECT_EQ(cut.sink_side, (std::vector<int>{2, 3}));
}

TEST(BruteForceMinCut, UnreachableSink) {
  FlowGraph g(4);
  g.add_arc(0, 1, 1.0);
  g.add_arc(3, 2, 1.0);
  const auto cut = brute_force_min_cut(g, 0, 3);
  EXPECT_EQ(cut.value, 0.0);
  EXPECT_EQ(cut.sink_side, (std::vector<int>{3}));
  g.add_arc(1, 2, 1.0);
  g.add_arc(2, 0, 1.0);
  EXPECT_EQ(brute_force_min_cut(g, 0, 3).sink_side, (std::vector<int>{3}));
}

}  // namespace
}  // namespace stochroute
