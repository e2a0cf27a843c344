#include "stochroute/separation.hpp"

#include <gtest/gtest.h>

#include <algorithm>

#include "stochroute/exact_oracle.hpp"
#include "stochroute/rng.hpp"
#include "support/random_instance.hpp"

namespace stochroute {
namespace {

// One vehicle over n targets; depot is local vertex n.
struct Fixture {
  explicit Fixture(int n) : built(build_two_stage(testing::random_instance(5, n, 1, 0, 1))), point(built.model.num_columns()) {}
  const VariableMap& vars() const { return built.vars; }
  void arc(int u, int v, double w) { point[built.vars.x(0, u, v)] = w; }
  void y(int i, double w) { point[built.vars.y(i, 0)] = w; }
  SupportGraph graph() const { return build_support_graph(point, built.vars, 0); }

  BuiltModel built;
  std::vector<double> point;
};

constexpr int a = 0, b = 1, c = 2, e = 3;

TEST(SupportGraph, KeepsPositiveEntriesOnly) {
  Fixture f(3);
  const int d = 3;
  f.arc(d, a, 1.0);
  f.arc(a, d, 1.0);
  f.arc(b, c, 1e-12);
  f.y(a, 1.0);
  const auto g = f.graph();
  EXPECT_EQ(g.depot(), d);
  EXPECT_EQ(g.vertices, (std::vector<int>{a, d}));
  EXPECT_EQ(g.arcs.size(), 2u);
  EXPECT_EQ(g.y[a], 1.0);
  EXPECT_EQ(g.y[b], 0.0);
}

TEST(SeparateInteger, TextbookSubtour) {
  Fixture f(3);
  const int d = 3;
  f.arc(d, a, 1);
  f.arc(a, d, 1);
  f.arc(b, c, 1);
  f.arc(c, b, 1);
  for (int i : {a, b, c}) f.y(i, 1);
  const auto cuts = separate_integer(f.graph(), f.point, f.vars());
  ASSERT_EQ(cuts.size(), 1u);
  EXPECT_EQ(cuts[0].set, (std::vector<int>{b, c}));
  EXPECT_EQ(cuts[0].anchor, b);
  EXPECT_NEAR(cut_slack(cuts[0], f.point, f.vars()), -1.0, 1e-12);
}

TEST(SeparateInteger, SingleTourHasNoCuts) {
  Fixture f(3);
  const int d = 3;
  f.arc(d, a, 1);
  f.arc(a, b, 1);
  f.arc(b, d, 1);
  f.y(a, 1);
  f.y(b, 1);
  EXPECT_TRUE(separate_integer(f.graph(), f.point, f.vars()).empty());
  EXPECT_TRUE(separate_fractional(f.graph(), f.point, f.vars()).empty());
}

TEST(SeparateInteger, TwoCyclesTwoCuts) {
  Fixture f(4);
  f.arc(a, b, 1);
  f.arc(b, a, 1);
  f.arc(c, e, 1);
  f.arc(e, c, 1);
  for (int i : {a, b, c, e}) f.y(i, 1);
  const auto g = f.graph();
  const auto comps = strongly_connected_components(g);
  EXPECT_EQ(comps, (std::vector<std::vector<int>>{{a, b}, {c, e}, {4}}));
  const auto cuts = separate_integer(g, f.point, f.vars());
  ASSERT_EQ(cuts.size(), 2u);
  EXPECT_EQ(cuts[0].set, (std::vector<int>{a, b}));
  EXPECT_EQ(cuts[1].set, (std::vector<int>{c, e}));

  SeparationOptions all;
  all.anchors = AnchorPolicy::All;
  EXPECT_EQ(separate_integer(g, f.point, f.vars(), all).size(), 4u);
}

TEST(SeparateFractional, FlowCoversAnchor) {
  Fixture f(1);
  const int d = 1;
  f.arc(d, a, 1);
  f.arc(a, d, 1);
  f.y(a, 1);
  EXPECT_TRUE(separate_fractional(f.graph(), f.point, f.vars()).empty());
}

TEST(SeparateFractional, HalfCapacityChain) {
  Fixture f(3);
  const int d = 3;
  f.arc(d, a, 0.5);
  f.arc(a, d, 0.5);
  f.arc(a, b, 0.5);
  f.arc(b, a, 0.5);
  f.arc(b, c, 1.0);
  f.arc(c, b, 1.0);
  f.y(a, 0.5);
  f.y(b, 0.5);
  f.y(c, 1.0);

  FlowGraph flow(4);
  for (const auto& arc : f.graph().arcs) flow.add_arc(arc.from, arc.to, arc.weight);
  EXPECT_NEAR(brute_force_min_cut(flow, d, c).value, 0.5, 1e-12);
  EXPECT_NEAR(max_flow(flow, d, c).value, 0.5, 1e-12);

  const auto cuts = separate_fractional(f.graph(), f.point, f.vars());
  ASSERT_FALSE(cuts.empty());
  const auto& cut = cuts.front();
  EXPECT_TRUE(std::ranges::binary_search(cut.set, c));
  EXPECT_EQ(cut.anchor, c);
  EXPECT_LT(cut_slack(cut, f.point, f.vars()), -1e-4);
  EXPECT_TRUE(separate_integer(f.graph(), f.point, f.vars()).empty());
}

TEST(Cut, RowMatchesSlack) {
  Fixture f(4);
  Rng rng(8);
  for (double& v : f.point) v = rng.canonical();
  const Cut cut{0, {a, c}, c};
  const Row row = cut.to_row(f.vars());
  EXPECT_EQ(row.sense, Sense::GreaterEqual);
  EXPECT_EQ(row.rhs, 0.0);
  double lhs = 0;
  for (std::size_t t = 0; t < row.index.size(); ++t) lhs += row.value[t] * f.point[row.index[t]];
  EXPECT_NEAR(lhs, cut_slack(cut, f.point, f.vars()), 1e-12);
  // arcs leaving {a, c}: 2 members × 3 outside vertices, plus −y_c
  EXPECT_EQ(row.index.size(), 7u);
}

// Weighted cycles with total weight 1 give a point that satisfies the degree
// rows, so inflow equals outflow on every set and y_i is the flow through i.
TEST(Separation, RandomCirculations) {
  Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(6));
    Fixture f(n);
    std::vector<double> w(1 + rng.below(4));
    double total = 0;
    for (double& v : w) total += (v = rng.uniform(0.05, 1.0));
    for (double& v : w) {
      v /= total;
      std::vector<int> cycle;
      for (int u = 0; u <= n; ++u)
        if (rng.canonical() < 0.5) cycle.push_back(u);
      if (cycle.size() < 2) continue;
      for (std::size_t t = cycle.size() - 1; t > 0; --t) std::swap(cycle[t], cycle[rng.below(t + 1)]);
      for (std::size_t t = 0; t < cycle.size(); ++t) {
        const int u = cycle[t], next = cycle[(t + 1) % cycle.size()];
        f.point[f.vars().x(0, u, next)] += v;
        if (u < n) f.point[f.vars().y(u, 0)] += v;
      }
    }
    const auto g = f.graph();
    SeparationOptions opts;
    opts.anchors = trial % 2 ? AnchorPolicy::All : AnchorPolicy::Strongest;
    for (const auto& cuts : {separate_integer(g, f.point, f.vars(), opts), separate_fractional(g, f.point, f.vars(), opts)})
      for (const Cut& cut : cuts) {
        EXPECT_LT(cut_slack(cut, f.point, f.vars()), -opts.violation_tolerance);
        EXPECT_TRUE(std::ranges::binary_search(cut.set, cut.anchor));
        EXPECT_FALSE(std::ranges::binary_search(cut.set, n));
      }
    // some depot→i cut is violated exactly when the fractional routine reports one
    FlowGraph flow(n + 1);
    for (const auto& arc : g.arcs) flow.add_arc(arc.from, arc.to, arc.weight);
    bool any_violated = false;
    for (int i = 0; i < n; ++i)
      if (g.y[i] > 1e-9 && brute_force_min_cut(flow, n, i).value < g.y[i] - 1e-4) any_violated = true;
    EXPECT_EQ(any_violated, !separate_fractional(g, f.point, f.vars(), opts).empty()) << "trial " << trial;
  }
}

}  // namespace
}  // namespace stochroute
