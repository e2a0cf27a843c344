#pragma once
/**
 * @file  separation.hpp
 * @brief Connectivity cuts x^k(δ⁺(S)) ≥ y_i^k for a vehicle k, a target set S
 *        and an anchor i ∈ S, separated on the per-vehicle support graph.
 *
 * Integer points: every strongly connected component without the depot is
 * a subtour. Fractional points: a minimum depot→i cut of value below y_i
 * names the sink side S′ as a violated set.
 */

#include <cstddef>
#include <span>
#include <vector>

#include "stochroute/linear_model.hpp"
#include "stochroute/model_builder.hpp"

namespace stochroute {

struct Cut {
  int vehicle = 0;
  std::vector<int> set;  ///< sorted target ids
  int anchor = 0;

  /// The LP row over every arc leaving `set` in the vehicle's arc domain.
  [[nodiscard]] Row to_row(const VariableMap& vars) const;
  friend bool operator==(const Cut&, const Cut&) = default;
};

struct SupportArc {
  int from = 0;
  int to = 0;
  double weight = 0.0;
};

/// Vehicle-local ids: targets 0..|T|-1, depot |T|.
struct SupportGraph {
  int vehicle = 0;
  int num_targets = 0;
  std::vector<int> vertices;        ///< sorted; always ends with the depot
  std::vector<SupportArc> arcs;
  std::vector<double> y;            ///< y_i^k for every target, 0 when absent

  [[nodiscard]] int depot() const noexcept { return num_targets; }
};

enum class AnchorPolicy { Strongest, All };

struct SeparationOptions {
  AnchorPolicy anchors = AnchorPolicy::Strongest;
  double violation_tolerance = 1e-4;
  /// Values at or below this count as zero when building the support graph.
  double zero_tolerance = 1e-9;
};

[[nodiscard]] SupportGraph build_support_graph(std::span<const double> point, const VariableMap& vars,
                                               std::size_t vehicle, double zero_tolerance = 1e-9);

/// x^k(δ⁺(S)) − y_anchor at `point`; negative means violated.
[[nodiscard]] double cut_slack(const Cut& cut, std::span<const double> point, const VariableMap& vars);

/// Strongly connected components of the support graph (Tarjan), each sorted,
/// listed in order of their smallest vertex.
[[nodiscard]] std::vector<std::vector<int>> strongly_connected_components(const SupportGraph& graph);

/// Cuts for every depot-free strongly connected component whose row is
/// violated by the point.
[[nodiscard]] std::vector<Cut> separate_integer(const SupportGraph& graph, std::span<const double> point,
                                                const VariableMap& vars, const SeparationOptions& options = {});

/// Depot-free components as above, then a minimum depot→i cut for each
/// remaining target with y_i > 0. Every returned cut is violated by more
/// than the tolerance.
[[nodiscard]] std::vector<Cut> separate_fractional(const SupportGraph& graph, std::span<const double> point,
                                                   const VariableMap& vars, const SeparationOptions& options = {});

}  // namespace stochroute
