#include "stochroute/branch_and_cut.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <ostream>
#include <set>
#include <unordered_map>

#include "stochroute/recourse.hpp"
#include "stochroute/simplex.hpp"

namespace stochroute {

std::optional<BranchChoice> select_branch(const VariableMap& vars, std::span<const double> point, double tol) {
  BranchChoice best;
  double best_score = tol;
  auto consider = [&](int col) {
    const double v = point[static_cast<std::size_t>(col)];
    const double score = std::min(v - std::floor(v), std::ceil(v) - v);
    if (score > best_score || (score == best_score && best.column >= 0 && col < best.column)) {
      best_score = score;
      best = {col, v};
    }
  };
  const std::size_t nt = vars.num_targets(), nk = vars.num_vehicles();
  for (std::size_t i = 0; i < nt; ++i)
    for (std::size_t k = 0; k < nk; ++k) consider(vars.y(i, k));
  if (best.column >= 0) return best;
  for (std::size_t k = 0; k < nk; ++k) consider(vars.h(k));
  if (best.column >= 0) return best;
  for (std::size_t k = 0; k < nk; ++k)
    for (std::size_t i = 0; i <= nt; ++i)
      for (std::size_t j = 0; j <= nt; ++j)
        if (i != j) consider(vars.x(k, i, j));
  if (best.column >= 0) return best;
  return std::nullopt;
}

// ------------------------------------------------------------------ heuristic
namespace {

using Mask = std::uint64_t;

double tour_length(const CostMatrix& c, std::size_t depot, const std::vector<int>& order) {
  if (order.empty()) return 0.0;
  double len = c(depot, static_cast<std::size_t>(order.front())) + c(static_cast<std::size_t>(order.back()), depot);
  for (std::size_t p = 1; p < order.size(); ++p)
    len += c(static_cast<std::size_t>(order[p - 1]), static_cast<std::size_t>(order[p]));
  return len;
}

// Relocate and segment-reversal moves until neither improves.
void improve_tour(const CostMatrix& c, std::size_t depot, std::vector<int>& order) {
  double cur = tour_length(c, depot, order);
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t p = 0; p < order.size() && !improved; ++p) {
      std::vector<int> rest = order;
      const int v = rest[p];
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(p));
      for (std::size_t q = 0; q <= rest.size(); ++q) {
        if (q == p) continue;
        std::vector<int> cand = rest;
        cand.insert(cand.begin() + static_cast<std::ptrdiff_t>(q), v);
        const double len = tour_length(c, depot, cand);
        if (len < cur - 1e-9) {
          order = std::move(cand);
          cur = len;
          improved = true;
          break;
        }
      }
    }
    for (std::size_t a = 0; a + 1 < order.size() && !improved; ++a)
      for (std::size_t b = a + 1; b < order.size(); ++b) {
        std::vector<int> cand = order;
        std::reverse(cand.begin() + static_cast<std::ptrdiff_t>(a), cand.begin() + static_cast<std::ptrdiff_t>(b) + 1);
        const double len = tour_length(c, depot, cand);
        if (len < cur - 1e-9) {
          order = std::move(cand);
          cur = len;
          improved = true;
          break;
        }
      }
  }
}

std::vector<int> nearest_neighbor(const CostMatrix& c, std::size_t depot, std::vector<int> targets) {
  std::vector<int> order;
  std::size_t at = depot;
  while (!targets.empty()) {
    auto it = std::min_element(targets.begin(), targets.end(), [&](int a, int b) {
      return c(at, static_cast<std::size_t>(a)) < c(at, static_cast<std::size_t>(b));
    });
    order.push_back(*it);
    at = static_cast<std::size_t>(*it);
    targets.erase(it);
  }
  return order;
}

std::vector<int> cheapest_insertion(const CostMatrix& c, std::size_t depot, const std::vector<int>& targets) {
  std::vector<int> order;
  std::vector<char> used(targets.size(), 0);
  for (std::size_t step = 0; step < targets.size(); ++step) {
    double best = INFINITY;
    std::size_t best_t = 0, best_p = 0;
    for (std::size_t t = 0; t < targets.size(); ++t) {
      if (used[t]) continue;
      for (std::size_t p = 0; p <= order.size(); ++p) {
        const std::size_t prev = p == 0 ? depot : static_cast<std::size_t>(order[p - 1]);
        const std::size_t next = p == order.size() ? depot : static_cast<std::size_t>(order[p]);
        const auto v = static_cast<std::size_t>(targets[t]);
        const double delta = c(prev, v) + c(v, next) - (order.empty() ? 0.0 : c(prev, next));
        if (delta < best) {
          best = delta;
          best_t = t;
          best_p = p;
        }
      }
    }
    used[best_t] = 1;
    order.insert(order.begin() + static_cast<std::ptrdiff_t>(best_p), targets[best_t]);
  }
  return order;
}

struct TourBuilder {
  const std::vector<CostMatrix>& costs;
  std::size_t nt;
  std::vector<std::unordered_map<Mask, std::pair<double, std::vector<int>>>> cache;

  TourBuilder(const std::vector<CostMatrix>& c, std::size_t targets) : costs(c), nt(targets), cache(c.size()) {}

  const std::pair<double, std::vector<int>>& tour(std::size_t k, Mask mask) {
    auto it = cache[k].find(mask);
    if (it != cache[k].end()) return it->second;
    std::vector<int> targets;
    for (std::size_t i = 0; i < nt; ++i)
      if (mask >> i & 1u) targets.push_back(static_cast<int>(i));
    std::vector<int> a = nearest_neighbor(costs[k], nt, targets);
    std::vector<int> b = cheapest_insertion(costs[k], nt, targets);
    improve_tour(costs[k], nt, a);
    improve_tour(costs[k], nt, b);
    const double la = tour_length(costs[k], nt, a), lb = tour_length(costs[k], nt, b);
    auto value = la <= lb ? std::make_pair(la, a) : std::make_pair(lb, b);
    return cache[k].emplace(mask, std::move(value)).first->second;
  }
};

std::vector<Mask> masks_of(const Assignment& owner, std::size_t nk) {
  std::vector<Mask> m(nk, 0);
  for (std::size_t i = 0; i < owner.size(); ++i) m[static_cast<std::size_t>(owner[i])] |= Mask{1} << i;
  return m;
}

Solution assemble(const Instance& in, TourBuilder& tb, const Assignment& owner, ModelKind kind) {
  Solution s;
  s.kind = kind;
  s.owner = owner;
  s.tours.assign(in.num_vehicles(), {});
  const auto masks = masks_of(owner, in.num_vehicles());
  for (std::size_t k = 0; k < in.num_vehicles(); ++k) {
    if (masks[k] == 0) continue;
    const auto& [len, order] = tb.tour(k, masks[k]);
    s.tours[k].push_back(in.depot_vertex(k));
    s.tours[k].insert(s.tours[k].end(), order.begin(), order.end());
    s.tours[k].push_back(in.depot_vertex(k));
    s.first_stage_cost += len;
  }
  s.excess = excess_matrix(in, owner, kind);
  s.expected_penalty = model_penalty(in, owner, kind);
  s.objective = s.first_stage_cost + s.expected_penalty;
  return s;
}

// Heuristic assignment value: constructed tours plus exact penalty.
double plan_value(const Instance& in, TourBuilder& tb, const Assignment& owner, ModelKind kind) {
  const auto masks = masks_of(owner, in.num_vehicles());
  double v = model_penalty(in, owner, kind);
  for (std::size_t k = 0; k < masks.size(); ++k) v += tb.tour(k, masks[k]).first;
  return v;
}

Assignment local_search(const Instance& in, TourBuilder& tb, Assignment owner, ModelKind kind) {
  double cur = plan_value(in, tb, owner, kind);
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t i = 0; i < owner.size(); ++i) {
      if (in.required_owner(i) >= 0) continue;
      const int from = owner[i];
      for (int k = 0; k < static_cast<int>(in.num_vehicles()); ++k) {
        if (k == from) continue;
        owner[i] = k;
        const double v = plan_value(in, tb, owner, kind);
        if (v < cur - 1e-9) {
          cur = v;
          improved = true;
          break;
        }
        owner[i] = from;
      }
    }
  }
  return owner;
}

}  // namespace

Solution heuristic_solution(const Instance& in, const std::vector<CostMatrix>& costs, ModelKind kind) {
  const std::size_t nt = in.num_targets(), nk = in.num_vehicles();
  TourBuilder tb(costs, nt);
  Assignment owner(nt, -1);
  std::vector<std::vector<int>> partial(nk);
  for (std::size_t i = 0; i < nt; ++i) {
    owner[i] = in.required_owner(i);
    if (owner[i] >= 0) partial[static_cast<std::size_t>(owner[i])].push_back(static_cast<int>(i));
  }
  for (std::size_t k = 0; k < nk; ++k) partial[k] = cheapest_insertion(costs[k], nt, partial[k]);

  // Common targets to the vehicle with the cheapest insertion plus penalty increase.
  for (std::size_t i = 0; i < nt; ++i) {
    if (owner[i] >= 0) continue;
    double best = INFINITY;
    std::size_t best_k = 0, best_p = 0;
    for (std::size_t k = 0; k < nk; ++k) {
      std::vector<double> load(in.num_scenarios(), 0.0);
      double before = 0.0, after = 0.0;
      for (std::size_t w = 0; w < in.num_scenarios(); ++w) {
        double sum = 0.0;
        for (int t : partial[k]) sum += in.scenarios.tau(static_cast<std::size_t>(t), k, w) - in.cap(static_cast<std::size_t>(t), k);
        const double add = in.scenarios.tau(i, k, w) - in.cap(i, k);
        before += in.scenarios.prob(w) * std::max(0.0, sum);
        after += in.scenarios.prob(w) * std::max(0.0, sum + add);
      }
      const double penalty = in.vehicles[k].gamma * (after - before);
      const auto& c = costs[k];
      const auto& ord = partial[k];
      for (std::size_t p = 0; p <= ord.size(); ++p) {
        const std::size_t prev = p == 0 ? nt : static_cast<std::size_t>(ord[p - 1]);
        const std::size_t next = p == ord.size() ? nt : static_cast<std::size_t>(ord[p]);
        const double delta = c(prev, i) + c(i, next) - (ord.empty() ? 0.0 : c(prev, next)) + penalty;
        if (delta < best) {
          best = delta;
          best_k = k;
          best_p = p;
        }
      }
    }
    owner[i] = static_cast<int>(best_k);
    partial[best_k].insert(partial[best_k].begin() + static_cast<std::ptrdiff_t>(best_p), static_cast<int>(i));
  }
  owner = local_search(in, tb, owner, kind);
  return assemble(in, tb, owner, kind);
}

// ------------------------------------------------------------ branch-and-cut
namespace {

using Clock = std::chrono::steady_clock;

struct BoundChange {
  int column;
  double lower;
  double upper;
};

struct Node {
  std::int64_t id = 0;
  int depth = 0;
  double bound = -INFINITY;
  std::vector<BoundChange> changes;
  Basis basis;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    if (a.depth != b.depth) return a.depth > b.depth;
    return a.id < b.id;
  }
};

class Engine {
 public:
  Engine(const Instance& in, const Params& params, ModelKind kind, SolveTrace* trace)
      : in_(in),
        params_(params),
        kind_(kind),
        trace_(trace),
        built_(kind == ModelKind::ExpectedValue ? build_evp(in) : build_two_stage(in)),
        solver_(built_.model),
        start_(Clock::now()) {
    sep_.anchors = params.cuts_per_component;
    sep_.violation_tolerance = params.violation_tolerance;
    for (const Column& c : built_.model.columns()) {
      root_lower_.push_back(c.lower);
      root_upper_.push_back(c.upper);
    }
  }

  Solution run() {
    if (params_.root_heuristic) offer_incumbent(heuristic_solution(in_, built_.costs, kind_), "heuristic");

    std::set<Node, NodeOrder> open;
    std::optional<Node> plunge;
    open.insert(Node{next_id_++, 0, -INFINITY, {}, {}});
    bool timed_out = false;

    while (!open.empty() || plunge) {
      update_bound(open, plunge);
      if (gap_closed()) break;
      if (elapsed() > params_.time_limit) {
        timed_out = true;
        break;
      }
      Node node;
      if (plunge) {
        node = std::move(*plunge);
        plunge.reset();
      } else {
        node = std::move(open.extract(open.begin()).value());
      }
      if (node.bound >= cutoff()) continue;
      auto children = process(node);
      if (children.empty()) continue;
      // Dive into the child on the rounding side; the sibling waits.
      plunge = std::move(children[0]);
      for (std::size_t c = 1; c < children.size(); ++c) open.insert(std::move(children[c]));
    }
    if (!timed_out && elapsed() > params_.time_limit && !(open.empty() && !plunge) && !gap_closed()) timed_out = true;

    if (!timed_out && open.empty() && !plunge && stats_.lp_failures == 0) raise_bound(incumbent_ ? incumbent_->objective : INFINITY);
    Solution out = incumbent_ ? *incumbent_ : Solution{};
    out.kind = kind_;
    out.bound = std::min(bound_, out.objective);
    out.gap = incumbent_ ? relative_gap(out.objective, out.bound) : INFINITY;
    if (!incumbent_) out.status = SolveStatus::TimeLimit;
    else if (timed_out && out.gap > params_.rel_gap) out.status = SolveStatus::TimeLimit;
    else if (stats_.lp_failures > 0 && out.gap > params_.rel_gap) out.status = SolveStatus::NodeFailure;
    else out.status = SolveStatus::Optimal;
    stats_.lp_iterations = solver_.total_iterations();
    stats_.wall_seconds = elapsed();
    out.stats = stats_;
    out.log = std::move(log_);
    return out;
  }

 private:
  double elapsed() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

  static double relative_gap(double inc, double bound) {
    if (!std::isfinite(inc)) return INFINITY;
    return std::max(0.0, inc - bound) / std::max(std::abs(inc), 1e-10);
  }

  double cutoff() const {
    if (!incumbent_) return INFINITY;
    return incumbent_->objective - params_.rel_gap * std::abs(incumbent_->objective);
  }

  bool gap_closed() const { return incumbent_ && relative_gap(incumbent_->objective, bound_) <= params_.rel_gap; }

  void update_bound(const std::set<Node, NodeOrder>& open, const std::optional<Node>& plunge) {
    double lb = INFINITY;
    if (!open.empty()) lb = open.begin()->bound;
    if (plunge) lb = std::min(lb, plunge->bound);
    if (incumbent_) lb = std::min(lb, incumbent_->objective);
    raise_bound(lb);
  }

  void raise_bound(double lb) {
    if (!(lb > bound_)) return;
    bound_ = lb;
    record("bound");
  }

  void record(const char* event) {
    log_.push_back({elapsed(), stats_.nodes, incumbent_ ? incumbent_->objective : INFINITY, bound_, event});
  }

  void offer_incumbent(Solution s, const char* event) {
    if (incumbent_ && s.objective >= incumbent_->objective - 1e-9) return;
    incumbent_ = std::move(s);
    record(event);
  }

  void apply_bounds(const std::vector<BoundChange>& changes) {
    for (int col : touched_)
      solver_.set_bounds(static_cast<std::size_t>(col), root_lower_[static_cast<std::size_t>(col)],
                         root_upper_[static_cast<std::size_t>(col)]);
    touched_.clear();
    for (const BoundChange& b : changes) {
      solver_.set_bounds(static_cast<std::size_t>(b.column), b.lower, b.upper);
      touched_.push_back(b.column);
    }
  }

  bool integral(const std::vector<double>& x) const {
    const auto& cols = built_.model.columns();
    for (std::size_t j = 0; j < cols.size(); ++j)
      if (cols[j].integer && std::abs(x[j] - std::round(x[j])) > params_.integrality_tolerance) return false;
    return true;
  }

  bool fractional_due(const Node& node) const {
    switch (params_.fractional) {
      case FractionalSeparation::Off: return false;
      case FractionalSeparation::Always: return true;
      case FractionalSeparation::DepthPolicy:
        return node.depth <= params_.fractional_max_depth ||
               (params_.fractional_node_interval > 0 && stats_.nodes % params_.fractional_node_interval == 0);
    }
    return false;
  }

  std::vector<Row> separate(const std::vector<double>& x, bool is_integral, bool fractional) {
    std::vector<Row> rows;
    for (std::size_t k = 0; k < in_.num_vehicles(); ++k) {
      const SupportGraph g = build_support_graph(x, built_.vars, k);
      std::vector<Cut> cuts;
      if (is_integral || !fractional) {
        ++stats_.integer_separations;
        cuts = separate_integer(g, x, built_.vars, sep_);
      } else {
        ++stats_.fractional_separations;
        cuts = separate_fractional(g, x, built_.vars, sep_);
      }
      for (Cut& c : cuts) {
        if (!pool_keys_.insert({c.vehicle, c.anchor, c.set}).second) continue;
        rows.push_back(c.to_row(built_.vars));
        if (trace_) trace_->cuts.push_back(std::move(c));
      }
    }
    stats_.cuts_added += static_cast<std::int64_t>(rows.size());
    return rows;
  }

  LpSolution resolve(const Node& node) {
    LpSolution lp = node.basis.empty() ? solver_.solve() : solver_.solve(node.basis);
    if (lp.status == LpStatus::IterationLimit) {
      solver_.reset_basis();
      lp = solver_.solve();
    }
    return lp;
  }

  void try_assignment(const std::vector<double>& x) {
    Assignment owner(in_.num_targets(), -1);
    for (std::size_t i = 0; i < in_.num_targets(); ++i)
      for (std::size_t k = 0; k < in_.num_vehicles(); ++k)
        if (x[static_cast<std::size_t>(built_.vars.y(i, k))] > 0.5) owner[i] = static_cast<int>(k);
    if (!tried_.insert(owner).second) return;
    if (!tours_) tours_.emplace(built_.costs, in_.num_targets());
    const double v = plan_value(in_, *tours_, owner, kind_);
    if (incumbent_ && v >= incumbent_->objective - 1e-9) return;
    offer_incumbent(assemble(in_, *tours_, owner, kind_), "assignment");
  }

  void accept_integer(const std::vector<double>& x) {
    FirstStage fs;
    fs.owner.assign(in_.num_targets(), -1);
    fs.arcs.resize(in_.num_vehicles());
    const std::size_t nt = in_.num_targets();
    auto global = [&](std::size_t k, std::size_t local) {
      return local == nt ? in_.depot_vertex(k) : static_cast<int>(local);
    };
    for (std::size_t k = 0; k < in_.num_vehicles(); ++k) {
      for (std::size_t i = 0; i < nt; ++i)
        if (x[static_cast<std::size_t>(built_.vars.y(i, k))] > 0.5) fs.owner[i] = static_cast<int>(k);
      for (std::size_t i = 0; i <= nt; ++i)
        for (std::size_t j = 0; j <= nt; ++j)
          if (i != j && x[static_cast<std::size_t>(built_.vars.x(k, i, j))] > 0.5)
            fs.arcs[k].emplace_back(global(k, i), global(k, j));
    }
    Solution s;
    s.kind = kind_;
    s.owner = fs.owner;
    s.tours = reconstruct_tours(in_, fs);
    s.first_stage_cost = tours_cost(in_, built_.costs, s.tours);
    s.excess = excess_matrix(in_, s.owner, kind_);
    s.expected_penalty = model_penalty(in_, s.owner, kind_);
    s.objective = s.first_stage_cost + s.expected_penalty;
    offer_incumbent(std::move(s), "integer");
  }

  // Solves the node with cut rounds; returns children when it branches.
  std::vector<Node> process(const Node& node) {
    ++stats_.nodes;
    apply_bounds(node.changes);
    LpSolution lp = resolve(node);
    const bool fractional = fractional_due(node);
    int flat_rounds = 0;
    while (true) {
      if (lp.status == LpStatus::Infeasible) return {};
      if (lp.status != LpStatus::Optimal) {
        ++stats_.lp_failures;
        return {};
      }
      if (node.depth == 0) stats_.root_bound = lp.objective;
      if (lp.objective >= cutoff()) return {};
      const bool is_integral = integral(lp.primal);
      if (!is_integral && flat_rounds >= 3) break;
      if (elapsed() > params_.time_limit && !is_integral) break;
      std::vector<Row> rows = separate(lp.primal, is_integral, fractional);
      if (rows.empty()) break;
      const double before = lp.objective;
      lp = solver_.add_rows_and_reoptimize(rows);
      if (lp.status == LpStatus::Optimal && lp.objective - before <= 1e-6 * std::max(1.0, std::abs(before)))
        ++flat_rounds;
      else
        flat_rounds = 0;
    }
    if (node.depth == 0) stats_.root_bound = lp.objective;
    log_progress(lp.objective);

    if (integral(lp.primal)) {
      accept_integer(lp.primal);
      return {};
    }
    bool y_integral = true;
    for (std::size_t i = 0; i < in_.num_targets() && y_integral; ++i)
      for (std::size_t k = 0; k < in_.num_vehicles(); ++k) {
        const double v = lp.primal[static_cast<std::size_t>(built_.vars.y(i, k))];
        if (std::abs(v - std::round(v)) > params_.integrality_tolerance) {
          y_integral = false;
          break;
        }
      }
    if (y_integral) try_assignment(lp.primal);
    if (lp.objective >= cutoff()) return {};

    const auto choice = select_branch(built_.vars, lp.primal, params_.integrality_tolerance);
    if (!choice) return {};
    const Basis basis = solver_.basis();
    std::vector<Node> children;
    for (int side : {1, 0}) {
      Node child;
      child.id = next_id_++;
      child.depth = node.depth + 1;
      child.bound = lp.objective;
      child.changes = node.changes;
      child.changes.push_back({choice->column, static_cast<double>(side), static_cast<double>(side)});
      child.basis = basis;
      children.push_back(std::move(child));
    }
    if (choice->value < 0.5) std::swap(children[0], children[1]);
    return children;
  }

  void log_progress(double node_bound) {
    if (!params_.progress || params_.node_log_interval <= 0 || stats_.nodes % params_.node_log_interval != 0) return;
    *params_.progress << "node " << stats_.nodes << " lp " << node_bound << " bound " << bound_ << " incumbent "
                      << (incumbent_ ? incumbent_->objective : INFINITY) << " cuts " << stats_.cuts_added << " it "
                      << solver_.total_iterations() << " t "
                      << elapsed() << "\n";
  }

  const Instance& in_;
  Params params_;
  ModelKind kind_;
  SolveTrace* trace_;
  BuiltModel built_;
  SimplexSolver solver_;
  Clock::time_point start_;
  SeparationOptions sep_;
  std::vector<double> root_lower_, root_upper_;
  std::vector<int> touched_;
  std::set<std::tuple<int, int, std::vector<int>>> pool_keys_;
  std::set<Assignment> tried_;
  std::optional<TourBuilder> tours_;
  std::optional<Solution> incumbent_;
  double bound_ = -INFINITY;
  std::int64_t next_id_ = 0;
  SolveStats stats_;
  std::vector<LogRecord> log_;
};

}  // namespace

Solution solve(const Instance& instance, const Params& params, ModelKind kind, SolveTrace* trace) {
  if (kind == ModelKind::Generic) throw std::invalid_argument("solve: model kind must be stochastic or expected value");
  Engine engine(instance, params, kind, trace);
  return engine.run();
}

}  // namespace stochroute
