#pragma once

#include <cstddef>
#include <vector>

namespace stochroute {

struct FlowArc {
  int from = 0;
  int to = 0;
  double capacity = 0.0;
};

/// Capacitated digraph on vertices 0..num_vertices-1; parallel arcs allowed.
struct FlowGraph {
  int num_vertices = 0;
  std::vector<FlowArc> arcs;

  explicit FlowGraph(int vertices = 0) : num_vertices(vertices) {}
  void add_arc(int from, int to, double capacity) { arcs.push_back({from, to, capacity}); }
};

struct MinCut {
  double value = 0.0;
  /// Sorted sink side; always contains t. The smallest minimum-cut sink side
  /// (the vertices that can still reach t in the final residual graph).
  std::vector<int> sink_side;
};

/// Capacity of the arcs leaving the complement of `sink_side` into it.
[[nodiscard]] double cut_capacity(const FlowGraph& graph, const std::vector<int>& sink_side);

/// Highest-label push-relabel (preflow phase only; the cut is read off the
/// residual graph). Requires s != t and capacities ≥ 0.
[[nodiscard]] MinCut max_flow(const FlowGraph& graph, int s, int t);

}  // namespace stochroute
