#pragma once
// KKT residuals of a bounded-variable LP solution, computed from the model
// alone so they do not trust the solver's internal bookkeeping.

#include <algorithm>
#include <cmath>
#include <vector>

#include "stochroute/linear_model.hpp"
#include "stochroute/simplex.hpp"

namespace stochroute::testing {

struct KktReport {
  double primal_residual = 0.0;  ///< max row or bound violation
  double dual_residual = 0.0;    ///< max wrong-signed multiplier or reduced cost
  double duality_gap = 0.0;      ///< |primal − dual| / max(1, |primal|)
};

inline KktReport kkt(const LinearModel& m, const LpSolution& s) {
  KktReport r;
  const auto& x = s.primal;
  std::vector<double> d(m.num_columns());
  for (std::size_t j = 0; j < m.num_columns(); ++j) {
    const Column& c = m.column(j);
    r.primal_residual = std::max({r.primal_residual, c.lower - x[j], x[j] - c.upper});
    d[j] = c.cost;
  }
  double dual_obj = 0.0;
  for (std::size_t i = 0; i < m.num_rows(); ++i) {
    const Row& row = m.row(i);
    r.primal_residual = std::max(r.primal_residual, row.violation(x));
    const double pi = s.dual[i];
    for (std::size_t t = 0; t < row.index.size(); ++t) d[static_cast<std::size_t>(row.index[t])] -= pi * row.value[t];
    if (row.sense == Sense::GreaterEqual) r.dual_residual = std::max(r.dual_residual, -pi);
    if (row.sense == Sense::LessEqual) r.dual_residual = std::max(r.dual_residual, pi);
    dual_obj += pi * row.rhs;
  }
  for (std::size_t j = 0; j < m.num_columns(); ++j) {
    const Column& c = m.column(j);
    const double scale = std::max(1.0, std::abs(c.cost));
    if (d[j] > 1e-9 * scale) {
      if (std::isinf(c.lower)) r.dual_residual = std::max(r.dual_residual, d[j]);
      else dual_obj += d[j] * c.lower;
    } else if (d[j] < -1e-9 * scale) {
      if (std::isinf(c.upper)) r.dual_residual = std::max(r.dual_residual, -d[j]);
      else dual_obj += d[j] * c.upper;
    }
  }
  const double primal_obj = m.objective(x);
  r.duality_gap = std::abs(primal_obj - dual_obj) / std::max(1.0, std::abs(primal_obj));
  return r;
}

}  // namespace stochroute::testing
