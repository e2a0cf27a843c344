#include "stochroute/maxflow.hpp"

#include <gtest/gtest.h>

#include "stochroute/exact_oracle.hpp"
#include "stochroute/rng.hpp"

namespace stochroute {
namespace {

TEST(MaxFlow, SingleArc) {
  FlowGraph g(2);
  g.add_arc(0, 1, 3.0);
  const auto cut = max_flow(g, 0, 1);
  EXPECT_DOUBLE_EQ(cut.value, 3.0);
  EXPECT_EQ(cut.sink_side, std::vector<int>{1});
}

TEST(MaxFlow, TwoParallelPaths) {
  FlowGraph g(4);
  g.add_arc(0, 1, 1.0);
  g.add_arc(1, 3, 2.0);
  g.add_arc(0, 2, 2.0);
  g.add_arc(2, 3, 1.0);
  EXPECT_DOUBLE_EQ(max_flow(g, 0, 3).value, 2.0);
  EXPECT_DOUBLE_EQ(brute_force_min_cut(g, 0, 3).value, 2.0);
}

TEST(MaxFlow, DisconnectedSink) {
  FlowGraph g(3);
  g.add_arc(0, 1, 5.0);
  g.add_arc(2, 1, 5.0);
  const auto cut = max_flow(g, 0, 2);
  EXPECT_EQ(cut.value, 0.0);
  EXPECT_EQ(cut.sink_side, std::vector<int>{2});
  const auto brute = brute_force_min_cut(g, 0, 2);
  EXPECT_EQ(brute.value, 0.0);
  EXPECT_EQ(brute.sink_side, std::vector<int>{2});
}

TEST(MaxFlow, RejectsBadInput) {
  FlowGraph g(2);
  g.add_arc(0, 1, -1.0);
  EXPECT_THROW((void)max_flow(g, 0, 1), std::invalid_argument);
  EXPECT_THROW((void)max_flow(FlowGraph(2), 1, 1), std::invalid_argument);
  EXPECT_THROW((void)brute_force_min_cut(FlowGraph(11), 0, 1), OracleGuardError);
}

TEST(MaxFlow, MatchesSubsetEnumeration) {
  Rng rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(9));
    FlowGraph g(n);
    const double density = rng.uniform(0.1, 0.8);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (u != v && rng.canonical() < density) g.add_arc(u, v, rng.canonical());
    const int s = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    int t = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
    if (t >= s) ++t;
    const auto flow = max_flow(g, s, t);
    const auto brute = brute_force_min_cut(g, s, t);
    ASSERT_NEAR(flow.value, brute.value, 1e-9) << "trial " << trial;
    EXPECT_NEAR(cut_capacity(g, flow.sink_side), flow.value, 1e-9);
    EXPECT_TRUE(std::binary_search(flow.sink_side.begin(), flow.sink_side.end(), t));
    EXPECT_FALSE(std::binary_search(flow.sink_side.begin(), flow.sink_side.end(), s));
  }
}

}  // namespace
}  // namespace stochroute
