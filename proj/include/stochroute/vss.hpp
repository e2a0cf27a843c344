#pragma once

#include "stochroute/branch_and_cut.hpp"
#include "stochroute/instance.hpp"
#include "stochroute/solution.hpp"

namespace stochroute {

struct VssReport {
  double s_star = 0.0;         ///< optimal two-stage objective
  double d_star = 0.0;         ///< two-stage objective at the expected-value first stage
  double vss = 0.0;            ///< d_star − s_star
  double evp_objective = 0.0;  ///< the expected-value model's own optimum
  double s_first_stage = 0.0;
  double d_first_stage = 0.0;
  double s_penalty = 0.0;
  double d_penalty = 0.0;
  double s_seconds = 0.0;
  double evp_seconds = 0.0;
  /// Both solves certified optimal; otherwise the bounds below apply.
  bool certified = false;
  double s_bound = 0.0;
  double evp_bound = 0.0;
  Solution stochastic;
  Solution expected_value;
};

/// Solves both models with the same parameters and evaluates the
/// expected-value first stage (x and y held fixed) under every scenario.
[[nodiscard]] VssReport compute_vss(const Instance& instance, const Params& params = {});

}  // namespace stochroute
