#include "stochroute/separation.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <string>

#include "stochroute/maxflow.hpp"

namespace stochroute {

Row Cut::to_row(const VariableMap& vars) const {
  const std::size_t local = vars.local_vertices();
  std::vector<char> inside(local, 0);
  for (int v : set) inside[static_cast<std::size_t>(v)] = 1;
  Row row;
  row.name = "sec_" + std::to_string(vehicle) + "_" + std::to_string(anchor);
  for (int v : set) row.name += "_" + std::to_string(v);
  row.sense = Sense::GreaterEqual;
  row.rhs = 0.0;
  const auto k = static_cast<std::size_t>(vehicle);
  for (int u : set)
    for (std::size_t v = 0; v < local; ++v) {
      if (inside[v]) continue;
      row.index.push_back(vars.x(k, static_cast<std::size_t>(u), v));
      row.value.push_back(1.0);
    }
  row.index.push_back(vars.y(static_cast<std::size_t>(anchor), k));
  row.value.push_back(-1.0);
  return row;
}

double cut_slack(const Cut& cut, std::span<const double> point, const VariableMap& vars) {
  const std::size_t local = vars.local_vertices();
  std::vector<char> inside(local, 0);
  for (int v : cut.set) inside[static_cast<std::size_t>(v)] = 1;
  const auto k = static_cast<std::size_t>(cut.vehicle);
  double out = 0.0;
  for (int u : cut.set)
    for (std::size_t v = 0; v < local; ++v)
      if (!inside[v]) out += point[static_cast<std::size_t>(vars.x(k, static_cast<std::size_t>(u), v))];
  return out - point[static_cast<std::size_t>(vars.y(static_cast<std::size_t>(cut.anchor), k))];
}

SupportGraph build_support_graph(std::span<const double> point, const VariableMap& vars, std::size_t vehicle,
                                 double zero_tolerance) {
  SupportGraph g;
  g.vehicle = static_cast<int>(vehicle);
  g.num_targets = static_cast<int>(vars.num_targets());
  g.y.assign(vars.num_targets(), 0.0);
  const std::size_t local = vars.local_vertices();
  std::vector<char> present(local, 0);
  present[vars.depot_local()] = 1;
  for (std::size_t i = 0; i < vars.num_targets(); ++i) {
    const double y = point[static_cast<std::size_t>(vars.y(i, vehicle))];
    if (y > zero_tolerance) {
      g.y[i] = y;
      present[i] = 1;
    }
  }
  for (std::size_t i = 0; i < local; ++i)
    for (std::size_t j = 0; j < local; ++j) {
      if (i == j) continue;
      const double x = point[static_cast<std::size_t>(vars.x(vehicle, i, j))];
      if (x <= zero_tolerance) continue;
      g.arcs.push_back({static_cast<int>(i), static_cast<int>(j), std::min(x, 1.0)});
      present[i] = present[j] = 1;
    }
  for (std::size_t v = 0; v < local; ++v)
    if (present[v]) g.vertices.push_back(static_cast<int>(v));
  return g;
}

std::vector<std::vector<int>> strongly_connected_components(const SupportGraph& g) {
  const auto local = static_cast<std::size_t>(g.num_targets + 1);
  std::vector<std::vector<int>> adj(local);
  for (const SupportArc& a : g.arcs) adj[static_cast<std::size_t>(a.from)].push_back(a.to);

  std::vector<int> index(local, -1), low(local, 0);
  std::vector<char> on_stack(local, 0);
  std::vector<int> stack;
  std::vector<std::vector<int>> out;
  int counter = 0;
  // Iterative Tarjan: frames hold (vertex, next neighbour position).
  for (int root : g.vertices) {
    if (index[static_cast<std::size_t>(root)] >= 0) continue;
    std::vector<std::pair<int, std::size_t>> frames{{root, 0}};
    index[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = counter++;
    stack.push_back(root);
    on_stack[static_cast<std::size_t>(root)] = 1;
    while (!frames.empty()) {
      auto& [v, next] = frames.back();
      const auto vi = static_cast<std::size_t>(v);
      if (next < adj[vi].size()) {
        const int w = adj[vi][next++];
        const auto wi = static_cast<std::size_t>(w);
        if (index[wi] < 0) {
          index[wi] = low[wi] = counter++;
          stack.push_back(w);
          on_stack[wi] = 1;
          frames.emplace_back(w, 0);
        } else if (on_stack[wi]) {
          low[vi] = std::min(low[vi], index[wi]);
        }
        continue;
      }
      if (low[vi] == index[vi]) {
        std::vector<int> comp;
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[static_cast<std::size_t>(w)] = 0;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
      }
      const int done = v;
      frames.pop_back();
      if (!frames.empty()) {
        const auto parent = static_cast<std::size_t>(frames.back().first);
        low[parent] = std::min(low[parent], low[static_cast<std::size_t>(done)]);
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

namespace {

class CutCollector {
 public:
  CutCollector(const SupportGraph& g, std::span<const double> point, const VariableMap& vars,
               const SeparationOptions& options)
      : g_(g), point_(point), vars_(vars), options_(options) {}

  // Emits the cut(s) for `set` that the point violates; returns true if any.
  bool offer(const std::vector<int>& set) {
    if (set.empty()) return false;
    std::vector<int> anchors;
    if (options_.anchors == AnchorPolicy::All) {
      anchors = set;
    } else {
      int best = set.front();
      for (int v : set)
        if (g_.y[static_cast<std::size_t>(v)] > g_.y[static_cast<std::size_t>(best)]) best = v;
      anchors.push_back(best);
    }
    bool any = false;
    for (int a : anchors) {
      Cut cut{g_.vehicle, set, a};
      if (cut_slack(cut, point_, vars_) >= -options_.violation_tolerance) continue;
      if (!seen_.insert({cut.set, cut.anchor}).second) continue;
      cuts_.push_back(std::move(cut));
      any = true;
    }
    return any;
  }

  std::vector<Cut> take() { return std::move(cuts_); }

 private:
  const SupportGraph& g_;
  std::span<const double> point_;
  const VariableMap& vars_;
  const SeparationOptions& options_;
  std::set<std::pair<std::vector<int>, int>> seen_;
  std::vector<Cut> cuts_;
};

// Depot-free components; returns the targets they cover.
std::vector<char> component_cuts(const SupportGraph& g, CutCollector& collector) {
  std::vector<char> covered(static_cast<std::size_t>(g.num_targets), 0);
  for (const auto& comp : strongly_connected_components(g)) {
    if (std::binary_search(comp.begin(), comp.end(), g.depot())) continue;
    if (collector.offer(comp))
      for (int v : comp) covered[static_cast<std::size_t>(v)] = 1;
  }
  return covered;
}

}  // namespace

std::vector<Cut> separate_integer(const SupportGraph& g, std::span<const double> point, const VariableMap& vars,
                                  const SeparationOptions& options) {
  CutCollector collector(g, point, vars, options);
  component_cuts(g, collector);
  return collector.take();
}

std::vector<Cut> separate_fractional(const SupportGraph& g, std::span<const double> point, const VariableMap& vars,
                                     const SeparationOptions& options) {
  CutCollector collector(g, point, vars, options);
  std::vector<char> covered = component_cuts(g, collector);

  FlowGraph flow(g.num_targets + 1);
  for (const SupportArc& a : g.arcs) flow.add_arc(a.from, a.to, a.weight);
  for (int i : g.vertices) {
    if (i == g.depot()) continue;
    const auto ii = static_cast<std::size_t>(i);
    if (covered[ii] || g.y[ii] <= options.zero_tolerance) continue;
    const MinCut cut = max_flow(flow, g.depot(), i);
    if (cut.value >= g.y[ii] - options.violation_tolerance) continue;
    if (collector.offer(cut.sink_side))
      for (int v : cut.sink_side) covered[static_cast<std::size_t>(v)] = 1;
  }
  return collector.take();
}

}  // namespace stochroute
