#include "stochroute/dubins.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "stochroute/rng.hpp"

namespace stochroute {
namespace {

constexpr double kPi = std::numbers::pi;

double wrap(double a) {
  a = std::fmod(a, kTwoPi);
  return a < 0 ? a + kTwoPi : a;
}

// Right-turn circles, outer tangent between them, arcs measured clockwise.
double rsr_by_construction(const Pose& a, const Pose& b, double r) {
  const double c1x = a.x + r * std::sin(a.theta), c1y = a.y - r * std::cos(a.theta);
  const double c2x = b.x + r * std::sin(b.theta), c2y = b.y - r * std::cos(b.theta);
  const double dx = c2x - c1x, dy = c2y - c1y;
  const double straight = std::hypot(dx, dy);
  const double phi = std::atan2(dy, dx);
  return r * (wrap(a.theta - phi) + wrap(phi - b.theta)) + straight;
}

Pose random_pose(Rng& rng, double extent) {
  return {rng.uniform(-extent, extent), rng.uniform(-extent, extent), rng.uniform(0.0, kTwoPi)};
}

double min_over_words(const Pose& a, const Pose& b, double r) {
  double best = INFINITY;
  for (DubinsWord w : kAllWords)
    if (auto p = word_candidate(w, a, b, r)) best = std::min(best, p->length);
  return best;
}

TEST(Pose, NormalizesHeading) {
  EXPECT_DOUBLE_EQ(Pose(0, 0, -kPi / 2).theta, 3 * kPi / 2);
  EXPECT_DOUBLE_EQ(Pose(0, 0, 5 * kPi).theta, kPi);
  EXPECT_EQ(Pose(0, 0, kTwoPi).theta, 0.0);
}

TEST(WordCandidate, AlignedLslIsStraight) {
  auto p = word_candidate(DubinsWord::LSL, {0, 0, 0}, {10, 0, 0}, 1.0);
  ASSERT_TRUE(p);
  EXPECT_NEAR(p->length, 10.0, 1e-12);
  EXPECT_NEAR(p->segment_params[0], 0.0, 1e-12);
  EXPECT_NEAR(p->segment_params[1], 10.0, 1e-12);
  EXPECT_NEAR(p->segment_params[2], 0.0, 1e-12);
}

TEST(WordCandidate, LrlAbsentForDistantPoses) {
  EXPECT_FALSE(word_candidate(DubinsWord::LRL, {0, 0, 0}, {10, 0, 0}, 1.0));
  EXPECT_FALSE(word_candidate(DubinsWord::RLR, {0, 0, 0}, {10, 0, 0}, 1.0));
}

TEST(WordCandidate, RsrMatchesTangentConstruction) {
  const Pose a{0, 0, kPi / 2}, b{5, 5, 0};
  auto p = word_candidate(DubinsWord::RSR, a, b, 2.0);
  ASSERT_TRUE(p);
  EXPECT_NEAR(p->length, rsr_by_construction(a, b, 2.0), 1e-9);
  EXPECT_NEAR(p->length, kPi + 3 * std::sqrt(2.0), 1e-9);
}

TEST(WordCandidate, RsrRandomAgainstConstruction) {
  Rng rng(7);
  for (int t = 0; t < 500; ++t) {
    const Pose a = random_pose(rng, 20), b = random_pose(rng, 20);
    const double r = rng.uniform(0.2, 5.0);
    auto p = word_candidate(DubinsWord::RSR, a, b, r);
    ASSERT_TRUE(p);
    EXPECT_NEAR(p->length, rsr_by_construction(a, b, r), 1e-8 * std::max(1.0, p->length));
  }
}

TEST(WordCandidate, RejectsNonPositiveRadius) {
  EXPECT_THROW((void)word_candidate(DubinsWord::LSL, {0, 0, 0}, {1, 0, 0}, 0.0), std::invalid_argument);
}

TEST(ShortestPath, IdenticalPosesZero) {
  EXPECT_EQ(shortest_path({0, 0, 0}, {0, 0, 0}, 1.0).length, 0.0);
  EXPECT_NEAR(shortest_path({3, -2, 1.2}, {3, -2, 1.2}, 4.0).length, 0.0, 1e-12);
}

TEST(ShortestPath, AlignedTieGoesToLsl) {
  auto p = shortest_path({0, 0, 0}, {100, 0, 0}, 1.0);
  EXPECT_EQ(p.word, DubinsWord::LSL);
  EXPECT_NEAR(p.length, 100.0, 1e-12);
}

TEST(ShortestPath, RandomPairsMatchWordMinimumAndEndpoint) {
  Rng rng(11);
  for (int t = 0; t < 1000; ++t) {
    const Pose a = random_pose(rng, 10), b = random_pose(rng, 10);
    const double r = rng.uniform(0.1, 4.0);
    const DubinsPath p = shortest_path(a, b, r);
    EXPECT_EQ(p.length, min_over_words(a, b, r));
    for (double s : p.segment_params) EXPECT_GE(s, 0.0);
    double total = 0;
    for (std::size_t i = 0; i < 3; ++i) total += p.segment_length(i);
    EXPECT_NEAR(total, p.length, 1e-9 * std::max(1.0, p.length));
    const Pose end = point_along(p, a, p.length);
    EXPECT_NEAR(end.x, b.x, 1e-7);
    EXPECT_NEAR(end.y, b.y, 1e-7);
    const double dth = std::abs(end.theta - b.theta);
    EXPECT_LT(std::min(dth, kTwoPi - dth), 1e-7);
  }
}

TEST(ShortestPath, Properties) {
  Rng rng(3);
  for (int t = 0; t < 2000; ++t) {
    const Pose a = random_pose(rng, 10), b = random_pose(rng, 10), c = random_pose(rng, 10);
    const double r = rng.uniform(0.1, 4.0);
    const double ab = shortest_path(a, b, r).length;
    EXPECT_GE(ab, std::hypot(b.x - a.x, b.y - a.y) - 1e-12);

    const double rot = rng.uniform(0, kTwoPi), tx = rng.uniform(-50, 50), ty = rng.uniform(-50, 50);
    auto move = [&](const Pose& p) {
      return Pose(std::cos(rot) * p.x - std::sin(rot) * p.y + tx, std::sin(rot) * p.x + std::cos(rot) * p.y + ty,
                  p.theta + rot);
    };
    EXPECT_NEAR(shortest_path(move(a), move(b), r).length, ab, 1e-9 * std::max(1.0, ab));

    const double s = rng.uniform(0.1, 10);
    const double scaled = shortest_path({a.x * s, a.y * s, a.theta}, {b.x * s, b.y * s, b.theta}, r * s).length;
    EXPECT_NEAR(scaled, s * ab, 1e-9 * std::max(1.0, s * ab));

    EXPECT_LE(shortest_path(a, c, r).length, ab + shortest_path(b, c, r).length + 1e-9);
  }
}

TEST(CostMatrix, SinglePose) {
  const Pose p{1, 2, 0.3};
  CostMatrix m = cost_matrix(std::span<const Pose>(&p, 1), 1.0);
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m(0, 0), CostMatrix::kNoEdge);
}

TEST(CostMatrix, AlignedPairIsAsymmetric) {
  const Pose poses[] = {{0, 0, 0}, {10, 0, 0}};
  CostMatrix m = cost_matrix(poses, 1.0);
  EXPECT_NEAR(m(0, 1), 10.0, 1e-12);
  EXPECT_EQ(m(1, 0), min_over_words(poses[1], poses[0], 1.0));
  EXPECT_GT(m(1, 0), 10.0);
}

TEST(CostMatrix, EntriesDominateEuclidean) {
  Rng rng(5);
  std::vector<Pose> poses;
  for (int i = 0; i < 12; ++i) poses.push_back(random_pose(rng, 30));
  CostMatrix m = cost_matrix(poses, 2.5);
  for (std::size_t i = 0; i < poses.size(); ++i)
    for (std::size_t j = 0; j < poses.size(); ++j) {
      if (i == j) {
        EXPECT_EQ(m(i, j), CostMatrix::kNoEdge);
        continue;
      }
      EXPECT_GE(m(i, j), std::hypot(poses[i].x - poses[j].x, poses[i].y - poses[j].y) - 1e-12);
      EXPECT_EQ(m(i, j), shortest_path(poses[i], poses[j], 2.5).length);
    }
}

double polyline_length(const std::vector<Point2>& pts) {
  double len = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) len += std::hypot(pts[i].x - pts[i - 1].x, pts[i].y - pts[i - 1].y);
  return len;
}

TEST(SamplePath, ZeroLengthIsOnePoint) {
  auto p = shortest_path({1, 1, 0}, {1, 1, 0}, 1.0);
  auto pts = sample_path(p, {1, 1, 0}, 0.5);
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_EQ(pts[0].x, 1.0);
}

TEST(SamplePath, StraightSegment) {
  auto p = shortest_path({0, 0, 0}, {10, 0, 0}, 1.0);
  auto pts = sample_path(p, {0, 0, 0}, 1.0);
  ASSERT_EQ(pts.size(), 11u);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    EXPECT_NEAR(pts[i].x, static_cast<double>(i), 1e-9);
    EXPECT_NEAR(pts[i].y, 0.0, 1e-12);
  }
}

TEST(SamplePath, ConvergesToPathLength) {
  Rng rng(19);
  for (int t = 0; t < 50; ++t) {
    const Pose a = random_pose(rng, 10), b = random_pose(rng, 10);
    const auto p = shortest_path(a, b, 1.5);
    if (p.length < 1e-6) continue;
    double prev = 0;
    for (double step : {1.0, 0.5, 0.25, 0.125, 0.0625, 0.01}) {
      auto pts = sample_path(p, a, step);
      EXPECT_NEAR(pts.front().x, a.x, 1e-12);
      EXPECT_NEAR(pts.back().x, b.x, 1e-6);
      EXPECT_NEAR(pts.back().y, b.y, 1e-6);
      for (std::size_t i = 1; i < pts.size(); ++i)
        EXPECT_LE(std::hypot(pts[i].x - pts[i - 1].x, pts[i].y - pts[i - 1].y), step + 1e-9);
      const double len = polyline_length(pts);
      EXPECT_LE(len, p.length + 1e-9);
      EXPECT_GE(len, prev - 1e-9);
      prev = len;
    }
    EXPECT_NEAR(prev, p.length, 1e-3 * p.length);
  }
}

}  // namespace
}  // namespace stochroute
