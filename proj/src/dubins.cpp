#include "stochroute/dubins.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stochroute {

namespace {

constexpr double kDomainSlack = 1e-12;

enum class Turn { Left, Straight, Right };

constexpr std::array<Turn, 3> segment_turns(DubinsWord word) {
  switch (word) {
    case DubinsWord::LSL: return {Turn::Left, Turn::Straight, Turn::Left};
    case DubinsWord::RSR: return {Turn::Right, Turn::Straight, Turn::Right};
    case DubinsWord::LSR: return {Turn::Left, Turn::Straight, Turn::Right};
    case DubinsWord::RSL: return {Turn::Right, Turn::Straight, Turn::Left};
    case DubinsWord::RLR: return {Turn::Right, Turn::Left, Turn::Right};
    case DubinsWord::LRL: return {Turn::Left, Turn::Right, Turn::Left};
  }
  return {Turn::Left, Turn::Straight, Turn::Left};
}

// Square root with the boundary guard: operands slightly below zero are
// clamped, anything further out marks the word infeasible.
std::optional<double> guarded_sqrt(double value) {
  if (value >= 0.0) return std::sqrt(value);
  if (value > -kDomainSlack) return 0.0;
  return std::nullopt;
}

std::optional<double> guarded_acos(double value) {
  if (std::abs(value) <= 1.0) return std::acos(value);
  if (std::abs(value) - 1.0 <= kDomainSlack) return std::acos(std::clamp(value, -1.0, 1.0));
  return std::nullopt;
}

// Normalised geometry shared by all six words: endpoints at unit radius,
// rotated so the chord lies on the x axis.
struct Frame {
  double d;
  double alpha;
  double beta;
  double sa, ca, sb, cb;
};

Frame make_frame(const Pose& start, const Pose& end, double radius) {
  const double dx = end.x - start.x;
  const double dy = end.y - start.y;
  const double chord = std::hypot(dx, dy);
  const double phi = chord > 0.0 ? std::atan2(dy, dx) : 0.0;
  Frame f{};
  f.d = chord / radius;
  f.alpha = normalize_angle(start.theta - phi);
  f.beta = normalize_angle(end.theta - phi);
  f.sa = std::sin(f.alpha);
  f.ca = std::cos(f.alpha);
  f.sb = std::sin(f.beta);
  f.cb = std::cos(f.beta);
  return f;
}

// Tangent direction for CSC words on coincident circles, where atan2 of the
// zero vector would be arbitrary.
double tangent_angle(double y, double x, double fallback) {
  if (std::abs(y) < kDomainSlack && std::abs(x) < kDomainSlack) return fallback;
  return std::atan2(y, x);
}

// Unit-radius parameters (t, p, q) of a word.
std::optional<std::array<double, 3>> solve_word(DubinsWord word, const Frame& f) {
  const double d = f.d;
  const double cos_ab = std::cos(f.alpha - f.beta);
  switch (word) {
    case DubinsWord::LSL: {
      auto p = guarded_sqrt(2.0 + d * d - 2.0 * cos_ab + 2.0 * d * (f.sa - f.sb));
      if (!p) return std::nullopt;
      const double th = tangent_angle(f.cb - f.ca, d + f.sa - f.sb, f.alpha);
      return std::array{normalize_angle(-f.alpha + th), *p, normalize_angle(f.beta - th)};
    }
    case DubinsWord::RSR: {
      auto p = guarded_sqrt(2.0 + d * d - 2.0 * cos_ab + 2.0 * d * (f.sb - f.sa));
      if (!p) return std::nullopt;
      const double th = tangent_angle(f.ca - f.cb, d - f.sa + f.sb, f.alpha);
      return std::array{normalize_angle(f.alpha - th), *p, normalize_angle(-f.beta + th)};
    }
    case DubinsWord::LSR: {
      auto p = guarded_sqrt(-2.0 + d * d + 2.0 * cos_ab + 2.0 * d * (f.sa + f.sb));
      if (!p) return std::nullopt;
      const double th = std::atan2(-f.ca - f.cb, d + f.sa + f.sb) - std::atan2(-2.0, *p);
      return std::array{normalize_angle(-f.alpha + th), *p, normalize_angle(-f.beta + th)};
    }
    case DubinsWord::RSL: {
      auto p = guarded_sqrt(-2.0 + d * d + 2.0 * cos_ab - 2.0 * d * (f.sa + f.sb));
      if (!p) return std::nullopt;
      const double th = std::atan2(f.ca + f.cb, d - f.sa - f.sb) - std::atan2(2.0, *p);
      return std::array{normalize_angle(f.alpha - th), *p, normalize_angle(f.beta - th)};
    }
    case DubinsWord::RLR: {
      auto ac = guarded_acos((6.0 - d * d + 2.0 * cos_ab + 2.0 * d * (f.sa - f.sb)) / 8.0);
      if (!ac) return std::nullopt;
      const double p = normalize_angle(kTwoPi - *ac);
      const double t = normalize_angle(f.alpha - std::atan2(f.ca - f.cb, d - f.sa + f.sb) + p / 2.0);
      return std::array{t, p, normalize_angle(f.alpha - f.beta - t + p)};
    }
    case DubinsWord::LRL: {
      auto ac = guarded_acos((6.0 - d * d + 2.0 * cos_ab + 2.0 * d * (f.sb - f.sa)) / 8.0);
      if (!ac) return std::nullopt;
      const double p = normalize_angle(kTwoPi - *ac);
      const double t = normalize_angle(-f.alpha - std::atan2(f.ca - f.cb, d + f.sa - f.sb) + p / 2.0);
      return std::array{t, p, normalize_angle(f.beta - f.alpha - t + p)};
    }
  }
  return std::nullopt;
}

Pose advance(const Pose& from, Turn turn, double distance, double radius) {
  switch (turn) {
    case Turn::Straight:
      return {from.x + distance * std::cos(from.theta), from.y + distance * std::sin(from.theta),
              from.theta};
    case Turn::Left: {
      const double heading = from.theta + distance / radius;
      return {from.x + radius * (std::sin(heading) - std::sin(from.theta)),
              from.y - radius * (std::cos(heading) - std::cos(from.theta)), heading};
    }
    case Turn::Right: {
      const double heading = from.theta - distance / radius;
      return {from.x - radius * (std::sin(heading) - std::sin(from.theta)),
              from.y + radius * (std::cos(heading) - std::cos(from.theta)), heading};
    }
  }
  return from;
}

}  // namespace

double normalize_angle(double angle) noexcept {
  double r = std::fmod(angle, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi - kDomainSlack) r = 0.0;
  return r;
}

std::string_view word_name(DubinsWord word) noexcept {
  static constexpr std::array<std::string_view, 6> names = {"LSL", "RSR", "LSR", "RSL", "RLR", "LRL"};
  return names[static_cast<std::size_t>(word)];
}

double DubinsPath::segment_length(std::size_t index) const noexcept {
  if (index == 1 && has_straight_middle(word)) return segment_params[1];
  return segment_params[index] * radius;
}

std::optional<DubinsPath> word_candidate(DubinsWord word, const Pose& start, const Pose& end,
                                         double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("word_candidate: radius must be positive");
  const Frame frame = make_frame(start, end, radius);
  const auto unit = solve_word(word, frame);
  if (!unit) return std::nullopt;

  DubinsPath path;
  path.word = word;
  path.radius = radius;
  path.segment_params = *unit;
  if (has_straight_middle(word)) path.segment_params[1] = (*unit)[1] * radius;
  path.length = path.segment_length(0) + path.segment_length(1) + path.segment_length(2);
  return path;
}

DubinsPath shortest_path(const Pose& start, const Pose& end, double radius) {
  std::optional<DubinsPath> best;
  for (DubinsWord word : kAllWords) {
    auto candidate = word_candidate(word, start, end, radius);
    if (candidate && (!best || candidate->length < best->length)) best = candidate;
  }
  // At least one CSC word is always defined for radius > 0.
  return *best;
}

Pose point_along(const DubinsPath& path, const Pose& start, double arc_length) {
  const auto turns = segment_turns(path.word);
  Pose current = start;
  double remaining = std::clamp(arc_length, 0.0, path.length);
  for (std::size_t s = 0; s < 3; ++s) {
    const double seg = path.segment_length(s);
    const double take = std::min(seg, remaining);
    current = advance(current, turns[s], take, path.radius);
    remaining -= take;
    if (remaining <= 0.0) break;
  }
  return current;
}

std::vector<Point2> sample_path(const DubinsPath& path, const Pose& start, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("sample_path: step must be positive");
  if (path.length <= 0.0) return {{start.x, start.y}};
  const auto intervals = static_cast<std::size_t>(std::ceil(path.length / step - 1e-12));
  std::vector<Point2> points;
  points.reserve(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) {
    const double s = path.length * static_cast<double>(i) / static_cast<double>(intervals);
    const Pose p = point_along(path, start, s);
    points.push_back({p.x, p.y});
  }
  return points;
}

CostMatrix cost_matrix(std::span<const Pose> poses, double radius) {
  if (poses.empty()) throw std::invalid_argument("cost_matrix: no poses");
  CostMatrix costs(poses.size());
  for (std::size_t i = 0; i < poses.size(); ++i)
    for (std::size_t j = 0; j < poses.size(); ++j)
      if (i != j) costs(i, j) = shortest_path(poses[i], poses[j], radius).length;
  return costs;
}

}  // namespace stochroute
