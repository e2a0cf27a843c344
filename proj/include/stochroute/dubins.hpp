#pragma once
/**
 * @file  dubins.hpp
 * @brief Shortest Dubins paths and per-vehicle travel-cost matrices.
 *
 * A Dubins vehicle moves forward at constant speed with a bounded turn
 * radius. The shortest path between two oriented configurations is one of
 * six three-segment words (LSL, RSR, LSR, RSL, RLR, LRL); each word is
 * solved in closed form on the radius-normalised problem.
 */

#include <array>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace stochroute {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Reduces an angle to [0, 2π). Values within 1e-12 of 2π map to 0.
[[nodiscard]] double normalize_angle(double angle) noexcept;

/// Planar position plus heading; the heading is normalised on construction.
struct Pose {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  Pose() = default;
  Pose(double x_, double y_, double theta_) : x(x_), y(y_), theta(normalize_angle(theta_)) {}

  friend bool operator==(const Pose&, const Pose&) = default;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Path words in tie-break order.
enum class DubinsWord { LSL = 0, RSR, LSR, RSL, RLR, LRL };

inline constexpr std::array<DubinsWord, 6> kAllWords = {
    DubinsWord::LSL, DubinsWord::RSR, DubinsWord::LSR,
    DubinsWord::RSL, DubinsWord::RLR, DubinsWord::LRL};

[[nodiscard]] std::string_view word_name(DubinsWord word) noexcept;

/// True when the middle segment of the word is a straight line.
[[nodiscard]] constexpr bool has_straight_middle(DubinsWord word) noexcept {
  return word != DubinsWord::RLR && word != DubinsWord::LRL;
}

struct DubinsPath {
  DubinsWord word = DubinsWord::LSL;
  /// First-arc angle, middle segment (length for CSC words, angle for CCC
  /// words), last-arc angle.
  std::array<double, 3> segment_params{0.0, 0.0, 0.0};
  double radius = 1.0;
  double length = 0.0;

  /// Length of segment `index` in instance units.
  [[nodiscard]] double segment_length(std::size_t index) const noexcept;
};

/// Path of the given word from `start` to `end`, or nullopt when the word has
/// no solution for this geometry. Requires radius > 0.
[[nodiscard]] std::optional<DubinsPath> word_candidate(DubinsWord word, const Pose& start,
                                                       const Pose& end, double radius);

/// Minimum-length path over the six words; ties resolve to the earlier word.
[[nodiscard]] DubinsPath shortest_path(const Pose& start, const Pose& end, double radius);

/// Configuration reached after travelling `arc_length` along `path` from `start`.
[[nodiscard]] Pose point_along(const DubinsPath& path, const Pose& start, double arc_length);

/// Polyline with spacing ≤ step; first point is the start, last the end.
[[nodiscard]] std::vector<Point2> sample_path(const DubinsPath& path, const Pose& start, double step);

/// Dense square matrix of directed travel lengths. Diagonal entries hold kNoEdge.
class CostMatrix {
 public:
  static constexpr double kNoEdge = std::numeric_limits<double>::infinity();

  CostMatrix() = default;
  explicit CostMatrix(std::size_t size) : size_(size), data_(size * size, kNoEdge) {}

  [[nodiscard]] std::size_t size() const noexcept { return size_; }
  [[nodiscard]] double operator()(std::size_t from, std::size_t to) const noexcept {
    return data_[from * size_ + to];
  }
  double& operator()(std::size_t from, std::size_t to) noexcept { return data_[from * size_ + to]; }

  friend bool operator==(const CostMatrix&, const CostMatrix&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<double> data_;
};

[[nodiscard]] CostMatrix cost_matrix(std::span<const Pose> poses, double radius);

}  // namespace stochroute
