#include "stochroute/maxflow.hpp"

#include <algorithm>
#include <stdexcept>

namespace stochroute {

double cut_capacity(const FlowGraph& graph, const std::vector<int>& sink_side) {
  std::vector<char> in_sink(static_cast<std::size_t>(graph.num_vertices), 0);
  for (int v : sink_side) in_sink[static_cast<std::size_t>(v)] = 1;
  double value = 0.0;
  for (const FlowArc& a : graph.arcs)
    if (!in_sink[static_cast<std::size_t>(a.from)] && in_sink[static_cast<std::size_t>(a.to)]) value += a.capacity;
  return value;
}

namespace {

// Residual amounts below this are treated as saturated.
constexpr double kResidualEps = 1e-12;

struct Edge {
  int to;
  int rev;
  double cap;
};

class PushRelabel {
 public:
  PushRelabel(const FlowGraph& g, int s, int t) : n_(g.num_vertices), s_(s), t_(t), adj_(static_cast<std::size_t>(n_)) {
    for (const FlowArc& a : g.arcs) {
      if (a.from == a.to || a.capacity <= 0.0) continue;
      auto& fwd = adj_[static_cast<std::size_t>(a.from)];
      auto& bwd = adj_[static_cast<std::size_t>(a.to)];
      fwd.push_back({a.to, static_cast<int>(bwd.size()), a.capacity});
      bwd.push_back({a.from, static_cast<int>(fwd.size()) - 1, 0.0});
    }
  }

  MinCut run() {
    const auto n = static_cast<std::size_t>(n_);
    excess_.assign(n, 0.0);
    label_.assign(n, 0);
    current_.assign(n, 0);
    buckets_.assign(2 * n + 1, {});
    global_relabel();
    label_[static_cast<std::size_t>(s_)] = n_;
    for (Edge& e : adj_[static_cast<std::size_t>(s_)]) {
      if (e.cap <= 0.0) continue;
      const double f = e.cap;
      e.cap = 0.0;
      adj_[static_cast<std::size_t>(e.to)][static_cast<std::size_t>(e.rev)].cap += f;
      excess_[static_cast<std::size_t>(e.to)] += f;
    }
    for (int v = 0; v < n_; ++v) activate(v);

    while (highest_ >= 0) {
      auto& bucket = buckets_[static_cast<std::size_t>(highest_)];
      if (bucket.empty()) {
        --highest_;
        continue;
      }
      const int v = bucket.back();
      bucket.pop_back();
      discharge(v);
    }

    MinCut cut;
    cut.value = excess_[static_cast<std::size_t>(t_)];
    // Vertices that reach t through residual arcs.
    std::vector<char> seen(n, 0);
    std::vector<int> stack{t_};
    seen[static_cast<std::size_t>(t_)] = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (const Edge& e : adj_[static_cast<std::size_t>(v)]) {
        const Edge& back = adj_[static_cast<std::size_t>(e.to)][static_cast<std::size_t>(e.rev)];
        if (!seen[static_cast<std::size_t>(e.to)] && back.cap > kResidualEps) {
          seen[static_cast<std::size_t>(e.to)] = 1;
          stack.push_back(e.to);
        }
      }
    }
    for (int v = 0; v < n_; ++v)
      if (seen[static_cast<std::size_t>(v)]) cut.sink_side.push_back(v);
    return cut;
  }

 private:
  void activate(int v) {
    if (v == s_ || v == t_ || excess_[static_cast<std::size_t>(v)] <= kResidualEps) return;
    const int d = label_[static_cast<std::size_t>(v)];
    if (d >= 2 * n_) return;
    buckets_[static_cast<std::size_t>(d)].push_back(v);
    highest_ = std::max(highest_, d);
  }

  // Exact distance-to-t labels by reverse BFS; vertices that cannot reach t
  // are lifted to n so their excess drains back to s.
  void global_relabel() {
    const auto n = static_cast<std::size_t>(n_);
    label_.assign(n, 2 * n_);
    label_[static_cast<std::size_t>(t_)] = 0;
    std::vector<int> queue{t_};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int v = queue[head];
      for (const Edge& e : adj_[static_cast<std::size_t>(v)]) {
        const auto u = static_cast<std::size_t>(e.to);
        if (label_[u] != 2 * n_ || e.to == s_) continue;
        if (adj_[u][static_cast<std::size_t>(e.rev)].cap <= kResidualEps) continue;
        label_[u] = label_[static_cast<std::size_t>(v)] + 1;
        queue.push_back(e.to);
      }
    }
    label_[static_cast<std::size_t>(s_)] = n_;
    for (std::size_t v = 0; v < n; ++v)
      if (label_[v] == 2 * n_ && static_cast<int>(v) != s_) label_[v] = n_ + 1;
    for (auto& b : buckets_) b.clear();
    highest_ = -1;
    std::fill(current_.begin(), current_.end(), 0);
  }

  void discharge(int v) {
    const auto vi = static_cast<std::size_t>(v);
    auto& edges = adj_[vi];
    while (excess_[vi] > kResidualEps) {
      if (current_[vi] == edges.size()) {
        relabel(v);
        if (label_[vi] >= 2 * n_) return;
        continue;
      }
      Edge& e = edges[current_[vi]];
      const auto w = static_cast<std::size_t>(e.to);
      if (e.cap > kResidualEps && label_[vi] == label_[w] + 1) {
        const double f = std::min(excess_[vi], e.cap);
        e.cap -= f;
        adj_[w][static_cast<std::size_t>(e.rev)].cap += f;
        excess_[vi] -= f;
        excess_[w] += f;
        activate(e.to);
      } else {
        ++current_[vi];
      }
    }
  }

  void relabel(int v) {
    const auto vi = static_cast<std::size_t>(v);
    int lowest = 2 * n_;
    for (const Edge& e : adj_[vi])
      if (e.cap > kResidualEps) lowest = std::min(lowest, label_[static_cast<std::size_t>(e.to)] + 1);
    label_[vi] = lowest;
    current_[vi] = 0;
    if (lowest < 2 * n_) highest_ = std::max(highest_, lowest);
  }

  int n_, s_, t_;
  std::vector<std::vector<Edge>> adj_;
  std::vector<double> excess_;
  std::vector<int> label_;
  std::vector<std::size_t> current_;
  std::vector<std::vector<int>> buckets_;
  int highest_ = -1;
};

}  // namespace

MinCut max_flow(const FlowGraph& graph, int s, int t) {
  if (s == t || s < 0 || t < 0 || s >= graph.num_vertices || t >= graph.num_vertices)
    throw std::invalid_argument("max_flow: bad terminals");
  for (const FlowArc& a : graph.arcs)
    if (a.capacity < 0.0) throw std::invalid_argument("max_flow: negative capacity");
  return PushRelabel(graph, s, t).run();
}

}  // namespace stochroute
