#pragma once
/**
 * @file  exact_oracle.hpp
 * @brief Brute-force reference solvers for tiny instances: full enumeration
 *        of assignments and tour orders, and subset-enumeration minimum cuts.
 */

#include <cstddef>
#include <stdexcept>

#include "stochroute/instance.hpp"
#include "stochroute/linear_model.hpp"
#include "stochroute/maxflow.hpp"
#include "stochroute/solution.hpp"

namespace stochroute {

class OracleGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kOracleMaxTargets = 9;
inline constexpr double kOracleMaxAssignments = 1e6;
inline constexpr int kOracleMaxCutVertices = 10;

/// Exhaustive optimum of the stochastic model, or of the expected-value
/// model when `kind` is ExpectedValue. Ties resolve to the first assignment
/// in enumeration order (target 0 varies slowest).
[[nodiscard]] Solution brute_force_solve(const Instance& instance, ModelKind kind = ModelKind::Stochastic);

/// Minimum over all bipartitions with s on the source side and t on the
/// sink side; ties prefer the smaller sink side, then the lexicographically
/// smaller one.
[[nodiscard]] MinCut brute_force_min_cut(const FlowGraph& graph, int s, int t);

}  // namespace stochroute
