#pragma once

#include <cstdint>
#include <random>

namespace stochroute {

/// Seedable, splittable generator. Each stream is a std::mt19937_64 seeded
/// with splitmix64(seed ^ splitmix64(stream)); reals use the top 53 bits so
/// draws do not depend on the standard library's distribution classes.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  /// Independent generator for a named sub-stream of the same seed.
  [[nodiscard]] Rng split(std::uint64_t stream) const { return Rng(seed_, stream_ * 0x9E3779B97F4A7C15ULL + stream + 1); }

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1).
  double canonical() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * canonical(); }
  /// Uniform integer in [0, bound), unbiased by rejection.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

[[nodiscard]] std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace stochroute
