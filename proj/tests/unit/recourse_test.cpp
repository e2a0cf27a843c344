#include "stochroute/recourse.hpp"

#include <gtest/gtest.h>

#include "stochroute/exact_oracle.hpp"
#include "support/fixed_lp.hpp"
#include "support/random_instance.hpp"

namespace stochroute {
namespace {

// One vehicle, two targets, hand-set service times.
Instance two_targets(std::size_t scenarios) {
  Instance in;
  in.name = "two";
  in.targets = {{0, 0, 0}, {10, 0, 0}};
  in.depots = {{-5, 0, 0}};
  in.vehicles = {{0, 1.0, 1000.0}};
  in.required = {{}};
  in.scenarios = ScenarioSet(2, 1, scenarios);
  for (std::size_t w = 0; w < scenarios; ++w) in.scenarios.prob(w) = 1.0 / static_cast<double>(scenarios);
  in.tau_bar = {10.0, 10.0};
  return in;
}

TEST(RecourseValue, ExactBudgetIsZero) {
  Instance in = two_targets(1);
  in.scenarios.tau(0, 0, 0) = 10.0;
  in.scenarios.tau(1, 0, 0) = 10.0;
  EXPECT_EQ(recourse_value(in, {0, 0}, 0), std::vector<double>{0.0});
}

TEST(RecourseValue, SurplusOffsetsExcess) {
  Instance in = two_targets(1);
  in.scenarios.tau(0, 0, 0) = 12.0;
  in.scenarios.tau(1, 0, 0) = 5.0;
  EXPECT_EQ(recourse_value(in, {0, 0}, 0), std::vector<double>{0.0});
}

TEST(RecourseValue, RejectsInvalidAssignment) {
  Instance in = two_targets(1);
  EXPECT_THROW((void)recourse_value(in, {0}, 0), std::invalid_argument);
  EXPECT_THROW((void)recourse_value(in, {0, 1}, 0), std::invalid_argument);
  in = testing::random_instance(3, 5, 2, 1, 2);
  Assignment owner(5, 0);
  for (int t : in.required[1]) owner[static_cast<std::size_t>(t)] = 0;
  EXPECT_THROW(check_assignment(in, owner), std::invalid_argument);
}

TEST(ExpectedPenalty, TwoScenarioHandArithmetic) {
  Instance in = two_targets(2);
  in.scenarios.tau(0, 0, 0) = 10.0;
  in.scenarios.tau(1, 0, 0) = 10.0;
  in.scenarios.tau(0, 0, 1) = 13.0;
  in.scenarios.tau(1, 0, 1) = 11.0;
  EXPECT_DOUBLE_EQ(expected_penalty(in, {0, 0}), 2000.0);
  in.scenarios.tau(0, 0, 1) = 9.0;
  EXPECT_EQ(expected_penalty(in, {0, 0}), 0.0);
}

TEST(RecourseValue, MonotoneInServiceTime) {
  Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    Instance in = testing::random_instance(100 + trial, 6, 3, 1, 4);
    const Assignment owner = testing::random_assignment(in, rng);
    const std::size_t i = rng.below(6), w = rng.below(4);
    const auto k = static_cast<std::size_t>(owner[i]);
    const double before = recourse_value(in, owner, w)[k];
    in.scenarios.tau(i, k, w) += rng.uniform(0.0, 5.0);
    EXPECT_GE(recourse_value(in, owner, w)[k], before);
  }
}

TEST(RecourseValue, MatchesFixedFirstStageLp) {
  Rng rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const Instance in = testing::random_instance(500 + trial, 3 + trial % 5, 1 + trial % 3, 1, 1 + trial % 6);
    const Assignment owner = testing::random_assignment(in, rng);
    const auto lp = testing::fixed_first_stage_lp(in, owner);
    ASSERT_EQ(lp.status, LpStatus::Optimal);
    for (std::size_t w = 0; w < in.num_scenarios(); ++w) {
      const auto z = recourse_value(in, owner, w);
      for (std::size_t k = 0; k < in.num_vehicles(); ++k) EXPECT_NEAR(z[k], lp.z[k][w], 1e-9);
    }
    EXPECT_NEAR(lp.objective - lp.arc_cost, expected_penalty(in, owner), 1e-9 * std::max(1.0, lp.objective));
    const auto evp = testing::fixed_first_stage_lp(in, owner, ModelKind::ExpectedValue);
    EXPECT_NEAR(evp.objective - evp.arc_cost, evp_penalty(in, owner), 1e-9 * std::max(1.0, evp.objective));
  }
}

TEST(EvaluateFixedFirstStage, OptimumReproducesItself) {
  const Instance in = testing::random_instance(9, 6, 2, 1, 5);
  const Solution best = brute_force_solve(in);
  const auto eval = evaluate_fixed_first_stage(in, first_stage_of(best));
  EXPECT_EQ(eval.total, best.objective);
  EXPECT_EQ(eval.tours, best.tours);
  EXPECT_EQ(eval.expected_penalty, expected_penalty(in, best.owner));
}

TEST(EvaluateFixedFirstStage, RejectsInjectedSubtour) {
  const Instance in = testing::random_instance(9, 6, 1, 0, 5);
  const Solution best = brute_force_solve(in);
  FirstStage fs = first_stage_of(best);
  // Close the first two targets into their own cycle and bypass them.
  const auto& tour = best.tours[0];
  ASSERT_GE(tour.size(), 5u);
  auto& arcs = fs.arcs[0];
  arcs.clear();
  arcs.push_back({tour[1], tour[2]});
  arcs.push_back({tour[2], tour[1]});
  arcs.push_back({tour[0], tour[3]});
  for (std::size_t t = 3; t + 1 < tour.size(); ++t) arcs.push_back({tour[t], tour[t + 1]});
  try {
    (void)evaluate_fixed_first_stage(in, fs);
    FAIL();
  } catch (const InfeasibleFirstStage& e) {
    EXPECT_EQ(e.family(), "subtour");
  }
  fs = first_stage_of(best);
  fs.arcs[0].pop_back();
  EXPECT_THROW((void)evaluate_fixed_first_stage(in, fs), InfeasibleFirstStage);
}

TEST(ExpectedPenalty, IndependentOfTourOrder) {
  const Instance in = testing::random_instance(21, 6, 1, 0, 5);
  const Solution best = brute_force_solve(in);
  FirstStage fs = first_stage_of(best);
  auto tour = best.tours[0];
  std::reverse(tour.begin() + 1, tour.end() - 1);
  fs.arcs[0].clear();
  for (std::size_t t = 0; t + 1 < tour.size(); ++t) fs.arcs[0].push_back({tour[t], tour[t + 1]});
  const auto eval = evaluate_fixed_first_stage(in, fs);
  EXPECT_EQ(eval.expected_penalty, expected_penalty(in, best.owner));
  EXPECT_GE(eval.total, best.objective);
}

}  // namespace
}  // namespace stochroute
