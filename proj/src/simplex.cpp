#include "stochroute/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/SparseLU>

namespace stochroute {

const char* to_string(LpStatus status) noexcept {
  switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration_limit";
  }
  return "unknown";
}

namespace {

struct Entry {
  int row;
  double value;
};

using Columns = std::vector<std::vector<Entry>>;

/// LU of the structural kernel of the basis plus a product-form eta file.
/// ftran maps a row-indexed vector to basis positions; btran maps a
/// position-indexed vector to rows.
class KernelFactor {
 public:
  bool factor(const std::vector<int>& head, std::size_t n, const Columns& cols) {
    const std::size_t m = head.size();
    cols_ = &cols;
    etas_.clear();
    slack_pos_of_row_.assign(m, -1);
    struct_pos_.clear();
    struct_var_.clear();
    for (std::size_t r = 0; r < m; ++r) {
      const auto var = static_cast<std::size_t>(head[r]);
      if (var >= n) {
        slack_pos_of_row_[var - n] = static_cast<int>(r);
      } else {
        struct_pos_.push_back(static_cast<int>(r));
        struct_var_.push_back(var);
      }
    }
    kernel_rows_.clear();
    kernel_index_of_row_.assign(m, -1);
    for (std::size_t row = 0; row < m; ++row)
      if (slack_pos_of_row_[row] < 0) {
        kernel_index_of_row_[row] = static_cast<int>(kernel_rows_.size());
        kernel_rows_.push_back(static_cast<int>(row));
      }
    const auto q = static_cast<Eigen::Index>(struct_pos_.size());
    if (static_cast<std::size_t>(q) != kernel_rows_.size()) return false;
    if (q == 0) return true;

    std::vector<Eigen::Triplet<double>> entries;
    for (Eigen::Index c = 0; c < q; ++c) {
      for (const Entry& e : cols[struct_var_[static_cast<std::size_t>(c)]]) {
        const int kr = kernel_index_of_row_[static_cast<std::size_t>(e.row)];
        if (kr >= 0) entries.emplace_back(kr, c, e.value);
      }
    }
    Eigen::SparseMatrix<double> kernel(q, q);
    kernel.setFromTriplets(entries.begin(), entries.end());
    kernel.makeCompressed();
    lu_.compute(kernel);
    if (lu_.info() != Eigen::Success) return false;
    // Reject nearly singular kernels: the all-ones solution must come back.
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(q);
    const Eigen::VectorXd back = lu_.solve(kernel * ones);
    return (back - ones).lpNorm<Eigen::Infinity>() < 1e-6;
  }

  void ftran(std::vector<double>& v) const {
    const std::size_t m = v.size();
    out_.assign(m, 0.0);
    for (std::size_t row = 0; row < m; ++row)
      if (slack_pos_of_row_[row] >= 0) out_[static_cast<std::size_t>(slack_pos_of_row_[row])] = -v[row];
    const auto q = static_cast<Eigen::Index>(struct_pos_.size());
    if (q > 0) {
      rhs_.resize(q);
      for (Eigen::Index k = 0; k < q; ++k) rhs_[k] = v[static_cast<std::size_t>(kernel_rows_[static_cast<std::size_t>(k)])];
      sol_ = lu_.solve(rhs_);
      for (Eigen::Index c = 0; c < q; ++c) {
        const auto pos = static_cast<std::size_t>(struct_pos_[static_cast<std::size_t>(c)]);
        const double w = sol_[c];
        out_[pos] = w;
        if (w == 0.0) continue;
        for (const Entry& e : (*cols_)[struct_var_[static_cast<std::size_t>(c)]]) {
          const int sp = slack_pos_of_row_[static_cast<std::size_t>(e.row)];
          if (sp >= 0) out_[static_cast<std::size_t>(sp)] += e.value * w;
        }
      }
    }
    for (const Eta& eta : etas_) {
      const double wr = out_[eta.r] / eta.pivot;
      if (wr != 0.0)
        for (std::size_t t = 0; t < eta.index.size(); ++t) out_[eta.index[t]] -= eta.value[t] * wr;
      out_[eta.r] = wr;
    }
    v.swap(out_);
  }

  void btran(std::vector<double>& v) const {
    const std::size_t m = v.size();
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      double s = v[it->r];
      for (std::size_t t = 0; t < it->index.size(); ++t) s -= it->value[t] * v[it->index[t]];
      v[it->r] = s / it->pivot;
    }
    out_.assign(m, 0.0);
    for (std::size_t row = 0; row < m; ++row)
      if (slack_pos_of_row_[row] >= 0) out_[row] = -v[static_cast<std::size_t>(slack_pos_of_row_[row])];
    const auto q = static_cast<Eigen::Index>(struct_pos_.size());
    if (q > 0) {
      rhs_.resize(q);
      for (Eigen::Index c = 0; c < q; ++c) {
        const auto pos = static_cast<std::size_t>(struct_pos_[static_cast<std::size_t>(c)]);
        double val = v[pos];
        for (const Entry& e : (*cols_)[struct_var_[static_cast<std::size_t>(c)]])
          if (slack_pos_of_row_[static_cast<std::size_t>(e.row)] >= 0) val -= e.value * out_[static_cast<std::size_t>(e.row)];
        rhs_[c] = val;
      }
      sol_ = lu_.transpose().solve(rhs_);
      for (Eigen::Index k = 0; k < q; ++k) out_[static_cast<std::size_t>(kernel_rows_[static_cast<std::size_t>(k)])] = sol_[k];
    }
    v.swap(out_);
  }

  void push_eta(std::size_t r, const std::vector<double>& alpha) {
    Eta eta;
    eta.r = r;
    eta.pivot = alpha[r];
    for (std::size_t i = 0; i < alpha.size(); ++i)
      if (i != r && alpha[i] != 0.0) {
        eta.index.push_back(i);
        eta.value.push_back(alpha[i]);
      }
    etas_.push_back(std::move(eta));
  }

  [[nodiscard]] std::size_t eta_count() const noexcept { return etas_.size(); }

 private:
  struct Eta {
    std::size_t r = 0;
    double pivot = 1.0;
    std::vector<std::size_t> index;
    std::vector<double> value;
  };

  const Columns* cols_ = nullptr;
  std::vector<int> slack_pos_of_row_;
  // Basis positions holding structurals at factor time, and their columns.
  std::vector<int> struct_pos_;
  std::vector<std::size_t> struct_var_;
  std::vector<int> kernel_rows_;
  std::vector<int> kernel_index_of_row_;
  mutable Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu_;
  std::vector<Eta> etas_;
  mutable std::vector<double> out_;
  mutable Eigen::VectorXd rhs_;
  mutable Eigen::VectorXd sol_;
};

}  // namespace

struct SimplexSolver::Impl {
  SimplexOptions opt;
  std::size_t n = 0;
  std::size_t m = 0;
  Columns cols;
  std::vector<std::vector<std::pair<int, double>>> row_entries;  ///< structural part of each row
  std::vector<double> lb, ub, cost;
  std::vector<double> x;
  std::vector<double> d;
  std::vector<VarStatus> status;
  std::vector<int> head;
  std::vector<int> pos;
  KernelFactor factor;
  bool have_basis = false;
  std::int64_t iterations = 0;
  std::int64_t total_iterations = 0;

  std::vector<double> work;
  std::vector<double> alpha_col;
  std::vector<double> alpha_row;
  std::vector<double> weights;  ///< dual pricing weights by basis position

  explicit Impl(const LinearModel& model, SimplexOptions options) : opt(options) {
    model.validate();
    n = model.num_columns();
    cols.resize(n);
    for (const Column& c : model.columns()) {
      lb.push_back(c.lower);
      ub.push_back(c.upper);
      cost.push_back(c.cost);
    }
    for (const Row& r : model.rows()) append_row(r);
    x.assign(n + m, 0.0);
    status.assign(n + m, VarStatus::AtLower);
  }

  std::size_t vars() const { return n + m; }

  void append_row(const Row& r) {
    const auto row = static_cast<int>(m);
    auto& entries = row_entries.emplace_back();
    for (std::size_t e = 0; e < r.index.size(); ++e)
      if (r.value[e] != 0.0) {
        cols[static_cast<std::size_t>(r.index[e])].push_back({row, r.value[e]});
        entries.emplace_back(r.index[e], r.value[e]);
      }
    double lo = -kInfinity, hi = kInfinity;
    if (r.sense != Sense::LessEqual) lo = r.rhs;
    if (r.sense != Sense::GreaterEqual) hi = r.rhs;
    lb.push_back(lo);
    ub.push_back(hi);
    cost.push_back(0.0);
    ++m;
  }

  double nonbasic_value(std::size_t j) const {
    switch (status[j]) {
      case VarStatus::AtLower: return lb[j];
      case VarStatus::AtUpper: return ub[j];
      default: return 0.0;
    }
  }

  VarStatus resting_status(std::size_t j) const {
    if (std::isfinite(lb[j])) return VarStatus::AtLower;
    if (std::isfinite(ub[j])) return VarStatus::AtUpper;
    return VarStatus::Free;
  }

  void slack_basis() {
    status.assign(vars(), VarStatus::Basic);
    x.assign(vars(), 0.0);
    head.assign(m, 0);
    pos.assign(vars(), -1);
    for (std::size_t j = 0; j < n; ++j) {
      status[j] = resting_status(j);
      x[j] = nonbasic_value(j);
    }
    for (std::size_t p = 0; p < m; ++p) {
      head[p] = static_cast<int>(n + p);
      pos[n + p] = static_cast<int>(p);
    }
    weights.assign(m, 1.0);
    have_basis = true;
  }

  bool install(const Basis& basis) {
    std::vector<VarStatus> st = basis.status;
    if (st.size() > vars() || st.size() < n) return false;
    st.resize(vars(), VarStatus::Basic);
    std::vector<int> h;
    for (std::size_t j = 0; j < st.size(); ++j)
      if (st[j] == VarStatus::Basic) h.push_back(static_cast<int>(j));
    if (h.size() != m) return false;
    status = std::move(st);
    head = std::move(h);
    pos.assign(vars(), -1);
    for (std::size_t r = 0; r < m; ++r) pos[static_cast<std::size_t>(head[r])] = static_cast<int>(r);
    x.assign(vars(), 0.0);
    for (std::size_t j = 0; j < vars(); ++j) {
      if (status[j] == VarStatus::Basic) continue;
      if (status[j] == VarStatus::AtLower && !std::isfinite(lb[j])) status[j] = resting_status(j);
      if (status[j] == VarStatus::AtUpper && !std::isfinite(ub[j])) status[j] = resting_status(j);
      x[j] = nonbasic_value(j);
    }
    weights.assign(m, 1.0);
    have_basis = true;
    return true;
  }

  bool refactor() { return factor.factor(head, n, cols); }

  // Dense row-indexed copy of the column of variable j.
  void load_column(std::size_t j, std::vector<double>& v) const {
    v.assign(m, 0.0);
    if (j < n) {
      for (const Entry& e : cols[j]) v[static_cast<std::size_t>(e.row)] = e.value;
    } else {
      v[j - n] = -1.0;
    }
  }

  double column_dot(std::size_t j, const std::vector<double>& y) const {
    if (j >= n) return -y[j - n];
    double s = 0.0;
    for (const Entry& e : cols[j]) s += e.value * y[static_cast<std::size_t>(e.row)];
    return s;
  }

  void compute_basic_values() {
    work.assign(m, 0.0);
    for (std::size_t j = 0; j < vars(); ++j) {
      if (status[j] == VarStatus::Basic) continue;
      const double v = x[j];
      if (v == 0.0) continue;
      if (j < n) {
        for (const Entry& e : cols[j]) work[static_cast<std::size_t>(e.row)] -= e.value * v;
      } else {
        work[j - n] += v;
      }
    }
    factor.ftran(work);
    for (std::size_t r = 0; r < m; ++r) x[static_cast<std::size_t>(head[r])] = work[r];
  }

  double infeasibility(std::size_t j) const {
    if (x[j] < lb[j] - opt.primal_tolerance) return lb[j] - x[j];
    if (x[j] > ub[j] + opt.primal_tolerance) return x[j] - ub[j];
    return 0.0;
  }

  bool primal_feasible() const {
    for (std::size_t r = 0; r < m; ++r)
      if (infeasibility(static_cast<std::size_t>(head[r])) > 0.0) return false;
    return true;
  }

  // π from basic costs; phase 1 uses the infeasibility gradient.
  std::vector<double> duals(bool phase1) const {
    std::vector<double> pi(m, 0.0);
    for (std::size_t r = 0; r < m; ++r) {
      const auto j = static_cast<std::size_t>(head[r]);
      if (phase1) {
        if (x[j] < lb[j] - opt.primal_tolerance) pi[r] = -1.0;
        else if (x[j] > ub[j] + opt.primal_tolerance) pi[r] = 1.0;
      } else {
        pi[r] = cost[j];
      }
    }
    factor.btran(pi);
    return pi;
  }

  void reduced_costs(const std::vector<double>& pi, bool phase1) {
    d.assign(vars(), 0.0);
    for (std::size_t j = 0; j < vars(); ++j) {
      if (status[j] == VarStatus::Basic) continue;
      d[j] = (phase1 ? 0.0 : cost[j]) - column_dot(j, pi);
    }
  }

  bool is_fixed(std::size_t j) const { return lb[j] == ub[j]; }

  enum class Outcome { Optimal, Infeasible, Unbounded, IterationLimit, NumericalTrouble };

  // ---------------------------------------------------------------- primal
  Outcome primal() {
    bool bland = false;
    int stall = 0;
    while (true) {
      if (iterations >= opt.max_iterations) return Outcome::IterationLimit;
      if (factor.eta_count() >= static_cast<std::size_t>(opt.refactor_interval)) {
        if (!refactor()) return Outcome::NumericalTrouble;
        compute_basic_values();
      }
      const bool phase1 = !primal_feasible();
      const auto pi = duals(phase1);
      reduced_costs(pi, phase1);

      std::size_t q = vars();
      double best = 0.0;
      for (std::size_t j = 0; j < vars(); ++j) {
        if (status[j] == VarStatus::Basic || is_fixed(j)) continue;
        double score = 0.0;
        if (status[j] == VarStatus::AtLower && d[j] < -opt.dual_tolerance) score = -d[j];
        else if (status[j] == VarStatus::AtUpper && d[j] > opt.dual_tolerance) score = d[j];
        else if (status[j] == VarStatus::Free && std::abs(d[j]) > opt.dual_tolerance) score = std::abs(d[j]);
        if (score <= 0.0) continue;
        if (bland) {
          q = j;
          break;
        }
        if (score > best) {
          best = score;
          q = j;
        }
      }
      if (q == vars()) return phase1 ? Outcome::Infeasible : Outcome::Optimal;

      const double dir = d[q] < 0.0 ? 1.0 : -1.0;
      load_column(q, alpha_col);
      factor.ftran(alpha_col);

      // Ratio test; rate is dx_B/dt for a unit move of the entering variable.
      auto step_for = [&](std::size_t r, double& bound) -> double {
        const double a = alpha_col[r];
        if (std::abs(a) <= opt.pivot_tolerance) return kInfinity;
        const auto j = static_cast<std::size_t>(head[r]);
        const double rate = -dir * a;
        const bool below = x[j] < lb[j] - opt.primal_tolerance;
        const bool above = x[j] > ub[j] + opt.primal_tolerance;
        if (rate > 0.0) {
          if (above) return kInfinity;
          bound = below ? lb[j] : ub[j];
          if (!std::isfinite(bound)) return kInfinity;
          return std::max(0.0, (bound - x[j]) / rate);
        }
        if (below) return kInfinity;
        bound = above ? ub[j] : lb[j];
        if (!std::isfinite(bound)) return kInfinity;
        return std::max(0.0, (x[j] - bound) / -rate);
      };
      double t_min = kInfinity;
      for (std::size_t r = 0; r < m; ++r) {
        double bound = 0.0;
        t_min = std::min(t_min, step_for(r, bound));
      }
      const double box = ub[q] - lb[q];
      if (!std::isfinite(t_min) && !std::isfinite(box))
        return phase1 ? Outcome::NumericalTrouble : Outcome::Unbounded;
      const bool flip = std::isfinite(box) && box <= t_min;

      std::size_t leave = m;
      double leave_bound = 0.0;
      double best_pivot = 0.0;
      for (std::size_t r = 0; r < m && !flip; ++r) {
        double bound = 0.0;
        const double t = step_for(r, bound);
        if (t > t_min + 1e-12) continue;
        if (bland) {
          if (leave == m || head[r] < head[leave]) {
            leave = r;
            leave_bound = bound;
          }
        } else if (std::abs(alpha_col[r]) > best_pivot) {
          best_pivot = std::abs(alpha_col[r]);
          leave = r;
          leave_bound = bound;
        }
      }

      const double t = flip ? box : t_min;
      ++iterations;
      ++total_iterations;
      if (t <= 1e-12) {
        if (++stall > opt.stall_threshold) bland = true;
      } else {
        stall = 0;
        bland = false;
      }

      for (std::size_t r = 0; r < m; ++r) x[static_cast<std::size_t>(head[r])] -= dir * t * alpha_col[r];
      x[q] += dir * t;
      if (flip) {
        status[q] = status[q] == VarStatus::AtLower ? VarStatus::AtUpper : VarStatus::AtLower;
        x[q] = nonbasic_value(q);
        continue;
      }
      pivot(leave, q, leave_bound);
    }
  }

  void pivot(std::size_t r, std::size_t q, double leave_bound) {
    const auto leaving = static_cast<std::size_t>(head[r]);
    x[leaving] = leave_bound;
    status[leaving] = (leave_bound == lb[leaving]) ? VarStatus::AtLower : VarStatus::AtUpper;
    pos[leaving] = -1;
    status[q] = VarStatus::Basic;
    head[r] = static_cast<int>(q);
    pos[q] = static_cast<int>(r);
    factor.push_eta(r, alpha_col);
  }

  // ------------------------------------------------------------------ dual
  // Flips boxed nonbasics whose reduced cost has the wrong sign. Returns false
  // if some dual infeasibility cannot be repaired that way.
  bool repair_dual_feasibility() {
    bool flipped = false, ok = true;
    for (std::size_t j = 0; j < vars() && ok; ++j) {
      if (status[j] == VarStatus::Basic || is_fixed(j)) continue;
      if (status[j] == VarStatus::AtLower && d[j] < -opt.dual_tolerance) {
        if (!std::isfinite(ub[j])) ok = false;
        else status[j] = VarStatus::AtUpper;
      } else if (status[j] == VarStatus::AtUpper && d[j] > opt.dual_tolerance) {
        if (!std::isfinite(lb[j])) ok = false;
        else status[j] = VarStatus::AtLower;
      } else if (status[j] == VarStatus::Free && std::abs(d[j]) > opt.dual_tolerance) {
        ok = false;
      } else {
        continue;
      }
      if (!ok) break;
      x[j] = nonbasic_value(j);
      flipped = true;
    }
    if (flipped) compute_basic_values();
    return ok;
  }

  // Dual steepest-edge pricing with reference weights w_r ≈ ‖e_rᵀB⁻¹‖², and
  // a bound-flipping ratio test: boxed candidates are passed (flipped to
  // their other bound) while the leaving row stays infeasible.
  Outcome dual() {
    bool bland = false;
    int stall = 0;
    if (weights.size() != m) weights.assign(m, 1.0);
    std::vector<double> rho, tau;
    std::vector<std::pair<double, std::size_t>> candidates;
    std::vector<std::size_t> flips;
    while (true) {
      if (iterations >= opt.max_iterations) return Outcome::IterationLimit;
      if (factor.eta_count() >= static_cast<std::size_t>(opt.refactor_interval)) {
        if (!refactor()) return Outcome::NumericalTrouble;
        compute_basic_values();
        reduced_costs(duals(false), false);
        if (!repair_dual_feasibility()) return Outcome::NumericalTrouble;
      }

      std::size_t r = m;
      double worst = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        const double inf = infeasibility(static_cast<std::size_t>(head[i]));
        if (inf <= 0.0) continue;
        if (bland) {
          if (r == m || head[i] < head[r]) r = i;
        } else if (inf * inf > worst * weights[i]) {
          worst = inf * inf / weights[i];
          r = i;
        }
      }
      if (r == m) return Outcome::Optimal;

      const auto leaving = static_cast<std::size_t>(head[r]);
      const bool to_lower = x[leaving] < lb[leaving];
      const double leave_bound = to_lower ? lb[leaving] : ub[leaving];

      rho.assign(m, 0.0);
      rho[r] = 1.0;
      factor.btran(rho);
      double rho_norm = 0.0;
      for (double v : rho) rho_norm += v * v;
      weights[r] = rho_norm;

      // Row r of B⁻¹A, accumulated row-wise over the nonzeros of ρ.
      alpha_row.assign(vars(), 0.0);
      for (std::size_t i = 0; i < m; ++i) {
        const double ri = rho[i];
        if (ri == 0.0) continue;
        for (const auto& [j, v] : row_entries[i]) alpha_row[static_cast<std::size_t>(j)] += ri * v;
        alpha_row[n + i] = -ri;
      }
      candidates.clear();
      for (std::size_t j = 0; j < vars(); ++j) {
        if (status[j] == VarStatus::Basic || is_fixed(j)) continue;
        const double a = alpha_row[j];
        if (std::abs(a) <= opt.pivot_tolerance) continue;
        bool eligible = false;
        switch (status[j]) {
          case VarStatus::AtLower: eligible = to_lower ? a < 0.0 : a > 0.0; break;
          case VarStatus::AtUpper: eligible = to_lower ? a > 0.0 : a < 0.0; break;
          case VarStatus::Free: eligible = true; break;
          default: break;
        }
        if (eligible) candidates.emplace_back(std::abs(d[j]) / std::abs(a), j);
      }
      if (candidates.empty()) return Outcome::Infeasible;

      std::sort(candidates.begin(), candidates.end());
      std::size_t q = vars();
      flips.clear();
      if (bland) {
        // smallest ratio, lowest index among ties; no flips
        const double best = candidates.front().first;
        for (const auto& [ratio, j] : candidates)
          if (ratio <= best + 1e-12 && j < q) q = j;
      } else {
        double slope = std::abs(x[leaving] - leave_bound);
        std::size_t c = 0;
        while (c < candidates.size()) {
          const std::size_t j = candidates[c].second;
          const double box = ub[j] - lb[j];
          const double drop = std::isfinite(box) && status[j] != VarStatus::Free ? std::abs(alpha_row[j]) * box : kInfinity;
          if (slope - drop < 0.0 || c + 1 == candidates.size()) break;
          slope -= drop;
          flips.push_back(j);
          ++c;
        }
        // Among near-ties at the breakpoint prefer the largest pivot.
        const double at = candidates[c].first;
        double best_alpha = 0.0;
        for (std::size_t t = c; t < candidates.size() && candidates[t].first <= at + 1e-9; ++t) {
          const std::size_t j = candidates[t].second;
          if (std::abs(alpha_row[j]) > best_alpha) {
            best_alpha = std::abs(alpha_row[j]);
            q = j;
          }
        }
      }

      load_column(q, alpha_col);
      factor.ftran(alpha_col);
      const double pivot_el = alpha_col[r];
      if (std::abs(pivot_el - alpha_row[q]) > 1e-7 * (1.0 + std::abs(pivot_el)) ||
          std::abs(pivot_el) <= opt.pivot_tolerance) {
        if (factor.eta_count() == 0) return Outcome::NumericalTrouble;
        if (!refactor()) return Outcome::NumericalTrouble;
        compute_basic_values();
        reduced_costs(duals(false), false);
        if (!repair_dual_feasibility()) return Outcome::NumericalTrouble;
        continue;
      }

      const double theta = d[q] / alpha_row[q];
      for (std::size_t j = 0; j < vars(); ++j)
        if (status[j] != VarStatus::Basic && alpha_row[j] != 0.0) d[j] -= theta * alpha_row[j];
      d[q] = 0.0;
      d[leaving] = -theta;

      if (!flips.empty()) {
        work.assign(m, 0.0);
        for (std::size_t j : flips) {
          const double old = x[j];
          status[j] = status[j] == VarStatus::AtLower ? VarStatus::AtUpper : VarStatus::AtLower;
          x[j] = nonbasic_value(j);
          const double step = x[j] - old;
          if (j < n) {
            for (const Entry& e : cols[j]) work[static_cast<std::size_t>(e.row)] += e.value * step;
          } else {
            work[j - n] -= step;
          }
        }
        factor.ftran(work);
        for (std::size_t i = 0; i < m; ++i) x[static_cast<std::size_t>(head[i])] -= work[i];
      }

      tau = rho;
      factor.ftran(tau);
      const double wr = weights[r];
      for (std::size_t i = 0; i < m; ++i) {
        if (i == r || alpha_col[i] == 0.0) continue;
        const double ratio = alpha_col[i] / pivot_el;
        weights[i] = std::max(weights[i] + ratio * (ratio * wr - 2.0 * tau[i]), 1e-8);
      }
      weights[r] = std::max(wr / (pivot_el * pivot_el), 1e-8);

      const double delta = (x[leaving] - leave_bound) / pivot_el;
      for (std::size_t i = 0; i < m; ++i) x[static_cast<std::size_t>(head[i])] -= delta * alpha_col[i];
      x[q] += delta;
      ++iterations;
      ++total_iterations;
      if (std::abs(theta) <= 1e-12) {
        if (++stall > opt.stall_threshold) bland = true;
      } else {
        stall = 0;
        bland = false;
      }
      pivot(r, q, leave_bound);
    }
  }

  // ---------------------------------------------------------------- driver
  // Primal simplex from a primal feasible basis, otherwise dual simplex
  // once bound flips make the basis dual feasible, otherwise primal phase 1.
  LpSolution run() {
    iterations = 0;
    if (!have_basis) slack_basis();
    if (!refactor()) {
      slack_basis();
      refactor();
    }
    compute_basic_values();

    Outcome outcome = Outcome::NumericalTrouble;
    for (int attempt = 0; attempt < 8; ++attempt) {
      if (primal_feasible()) {
        outcome = primal();
      } else {
        reduced_costs(duals(false), false);
        outcome = repair_dual_feasibility() ? dual() : primal();
      }
      if (outcome == Outcome::NumericalTrouble) {
        if (!refactor()) {
          slack_basis();
          refactor();
        }
        compute_basic_values();
        continue;
      }
      if (outcome != Outcome::Optimal) break;
      // Confirm on a fresh factorisation.
      if (!refactor()) {
        slack_basis();
        refactor();
        compute_basic_values();
        continue;
      }
      compute_basic_values();
      if (!primal_feasible()) continue;
      reduced_costs(duals(false), false);
      bool dual_ok = true;
      for (std::size_t j = 0; j < vars() && dual_ok; ++j) {
        if (status[j] == VarStatus::Basic || is_fixed(j)) continue;
        if (status[j] == VarStatus::AtLower && d[j] < -1e-7) dual_ok = false;
        if (status[j] == VarStatus::AtUpper && d[j] > 1e-7) dual_ok = false;
        if (status[j] == VarStatus::Free && std::abs(d[j]) > 1e-7) dual_ok = false;
      }
      if (dual_ok) break;
    }

    LpSolution sol;
    sol.iterations = iterations;
    switch (outcome) {
      case Outcome::Optimal: sol.status = LpStatus::Optimal; break;
      case Outcome::Infeasible: sol.status = LpStatus::Infeasible; break;
      case Outcome::Unbounded: sol.status = LpStatus::Unbounded; break;
      default: sol.status = LpStatus::IterationLimit; break;
    }
    sol.primal.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n));
    const auto pi = duals(false);
    sol.dual.assign(pi.begin(), pi.end());
    sol.reduced_cost.resize(n);
    for (std::size_t j = 0; j < n; ++j) sol.reduced_cost[j] = cost[j] - column_dot(j, pi);
    for (std::size_t j = 0; j < n; ++j) sol.objective += cost[j] * x[j];
    sol.basis.status = status;
    return sol;
  }
};

SimplexSolver::SimplexSolver(const LinearModel& model, SimplexOptions options)
    : impl_(std::make_unique<Impl>(model, options)) {}
SimplexSolver::~SimplexSolver() = default;
SimplexSolver::SimplexSolver(SimplexSolver&&) noexcept = default;
SimplexSolver& SimplexSolver::operator=(SimplexSolver&&) noexcept = default;

std::size_t SimplexSolver::num_columns() const noexcept { return impl_->n; }
std::size_t SimplexSolver::num_rows() const noexcept { return impl_->m; }
std::int64_t SimplexSolver::total_iterations() const noexcept { return impl_->total_iterations; }

LpSolution SimplexSolver::solve() { return impl_->run(); }

LpSolution SimplexSolver::solve(const Basis& warm) {
  if (!impl_->install(warm)) impl_->have_basis = false;
  return impl_->run();
}

void SimplexSolver::add_rows(std::span<const Row> rows) {
  Impl& s = *impl_;
  for (const Row& r : rows) {
    for (int j : r.index)
      if (j < 0 || static_cast<std::size_t>(j) >= s.n) throw std::invalid_argument("add_rows: bad column index");
    s.append_row(r);
    const std::size_t slack = s.n + s.m - 1;
    s.status.push_back(VarStatus::Basic);
    s.x.push_back(r.activity(std::vector<double>(s.x.begin(), s.x.begin() + static_cast<std::ptrdiff_t>(s.n))));
    if (s.have_basis) {
      s.head.push_back(static_cast<int>(slack));
      s.pos.push_back(static_cast<int>(s.m - 1));
      if (s.weights.size() + 1 == s.m) s.weights.push_back(1.0);
    }
  }
  if (!s.have_basis) {
    s.status.assign(s.vars(), VarStatus::AtLower);
    s.x.assign(s.vars(), 0.0);
  }
}

LpSolution SimplexSolver::add_rows_and_reoptimize(std::span<const Row> rows) {
  add_rows(rows);
  return impl_->run();
}

void SimplexSolver::set_bounds(std::size_t column, double lower, double upper) {
  Impl& s = *impl_;
  if (column >= s.n) throw std::out_of_range("set_bounds: column");
  if (lower > upper) throw std::invalid_argument("set_bounds: lower > upper");
  s.lb[column] = lower;
  s.ub[column] = upper;
  if (s.status[column] != VarStatus::Basic) {
    if (s.status[column] == VarStatus::AtLower && !std::isfinite(lower)) s.status[column] = s.resting_status(column);
    if (s.status[column] == VarStatus::AtUpper && !std::isfinite(upper)) s.status[column] = s.resting_status(column);
    if (s.status[column] == VarStatus::Free && (std::isfinite(lower) || std::isfinite(upper)))
      s.status[column] = s.resting_status(column);
    s.x[column] = s.nonbasic_value(column);
  }
}

double SimplexSolver::lower(std::size_t column) const { return impl_->lb.at(column); }
double SimplexSolver::upper(std::size_t column) const { return impl_->ub.at(column); }

Basis SimplexSolver::basis() const { return Basis{impl_->status}; }

void SimplexSolver::reset_basis() { impl_->have_basis = false; }

LpSolution solve_lp(const LinearModel& model, const Basis* warm, SimplexOptions options) {
  SimplexSolver solver(model, options);
  return warm ? solver.solve(*warm) : solver.solve();
}

}  // namespace stochroute
