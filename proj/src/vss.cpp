#include "stochroute/vss.hpp"

#include "stochroute/recourse.hpp"

namespace stochroute {

VssReport compute_vss(const Instance& in, const Params& params) {
  VssReport r;
  r.stochastic = solve(in, params, ModelKind::Stochastic);
  r.expected_value = solve(in, params, ModelKind::ExpectedValue);
  const auto costs = vehicle_cost_matrices(in);
  const FixedEvaluation fixed = evaluate_fixed_first_stage(in, costs, first_stage_of(r.expected_value));
  const ObjectiveSplit s = objective_split(in, costs, r.stochastic);
  r.s_star = s.total();
  r.s_first_stage = s.first_stage_cost;
  r.s_penalty = s.expected_penalty;
  r.d_star = fixed.total;
  r.d_first_stage = fixed.first_stage_cost;
  r.d_penalty = fixed.expected_penalty;
  r.vss = r.d_star - r.s_star;
  r.evp_objective = r.expected_value.objective;
  r.s_seconds = r.stochastic.stats.wall_seconds;
  r.evp_seconds = r.expected_value.stats.wall_seconds;
  r.certified = r.stochastic.certified() && r.expected_value.certified();
  r.s_bound = r.stochastic.bound;
  r.evp_bound = r.expected_value.bound;
  return r;
}

}  // namespace stochroute
