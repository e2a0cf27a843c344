#pragma once
/**
 * @file  branch_and_cut.hpp
 * @brief LP-based branch-and-bound with lazily separated connectivity cuts.
 *
 * All cuts are global rows of one LP. Nodes carry bound changes and a warm
 * basis. Integer candidates are always screened by component separation
 * before they can become incumbents; fractional points get min-cut
 * separation according to the depth policy.
 */

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "stochroute/instance.hpp"
#include "stochroute/model_builder.hpp"
#include "stochroute/separation.hpp"
#include "stochroute/solution.hpp"

namespace stochroute {

enum class FractionalSeparation { Off, Always, DepthPolicy };

struct Params {
  double time_limit = 3600.0;  ///< seconds
  double rel_gap = 1e-6;
  double integrality_tolerance = 1e-6;
  double violation_tolerance = 1e-4;
  AnchorPolicy cuts_per_component = AnchorPolicy::Strongest;
  FractionalSeparation fractional = FractionalSeparation::DepthPolicy;
  int fractional_max_depth = 5;
  int fractional_node_interval = 10;
  bool root_heuristic = true;
  /// Progress line every this many nodes to `progress` (0 or null: silent).
  int node_log_interval = 0;
  std::ostream* progress = nullptr;
};

struct BranchChoice {
  int column = -1;
  double value = 0.0;
};

/// Most fractional binary, y columns before h before x; ties go to the
/// lowest column index. nullopt when every binary is integral.
[[nodiscard]] std::optional<BranchChoice> select_branch(const VariableMap& vars, std::span<const double> point,
                                                        double integrality_tolerance = 1e-6);

/// Cuts added during a run, for validity spot checks.
struct SolveTrace {
  std::vector<Cut> cuts;
};

[[nodiscard]] Solution solve(const Instance& instance, const Params& params = {},
                             ModelKind kind = ModelKind::Stochastic, SolveTrace* trace = nullptr);

/// Greedy assignment plus constructed tours with local search; the root
/// incumbent of solve().
[[nodiscard]] Solution heuristic_solution(const Instance& instance, const std::vector<CostMatrix>& costs,
                                          ModelKind kind);

}  // namespace stochroute
