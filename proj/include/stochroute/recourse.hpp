#pragma once
/**
 * @file  recourse.hpp
 * @brief Second-stage evaluation: for fixed assignments the excess service
 *        time is z_k^ω = max(0, Σ_i (τ_ik^ω − τ̄_ik) y_i^k).
 */

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stochroute/dubins.hpp"
#include "stochroute/instance.hpp"
#include "stochroute/linear_model.hpp"
#include "stochroute/solution.hpp"

namespace stochroute {

/// owner[i] is the vehicle serving target i.
using Assignment = std::vector<int>;

/// Throws std::invalid_argument unless every target has one valid owner and
/// required targets belong to their vehicle.
void check_assignment(const Instance& instance, const Assignment& owner);

[[nodiscard]] std::vector<double> recourse_value(const Instance& instance, const Assignment& owner,
                                                 std::size_t scenario);

/// Σ_ω p^ω Σ_k γ_k z_k^ω, scenario-major.
[[nodiscard]] double expected_penalty(const Instance& instance, const Assignment& owner);

/// Σ_k γ_k max(0, Σ_i (E[τ_ik] − τ̄_ik) y_i^k): the expected-value model's penalty.
[[nodiscard]] double evp_penalty(const Instance& instance, const Assignment& owner);

[[nodiscard]] double model_penalty(const Instance& instance, const Assignment& owner, ModelKind kind);

/// z values per vehicle and penalty slot for the given model kind.
[[nodiscard]] std::vector<std::vector<double>> excess_matrix(const Instance& instance, const Assignment& owner,
                                                             ModelKind kind);

/// Arc cost of tours given as global vertex sequences.
[[nodiscard]] double tours_cost(const Instance& instance, const std::vector<CostMatrix>& costs,
                                const std::vector<std::vector<int>>& tours);

struct ObjectiveSplit {
  double first_stage_cost = 0.0;
  double expected_penalty = 0.0;
  [[nodiscard]] double total() const noexcept { return first_stage_cost + expected_penalty; }
};

/// Travel cost of the solution's tours and its expected penalty under the
/// full scenario set.
[[nodiscard]] ObjectiveSplit objective_split(const Instance& instance, const Solution& solution);
[[nodiscard]] ObjectiveSplit objective_split(const Instance& instance, const std::vector<CostMatrix>& costs,
                                             const Solution& solution);

/// First-stage decision as raw arcs (global vertex ids) plus assignment.
struct FirstStage {
  Assignment owner;
  std::vector<std::vector<std::pair<int, int>>> arcs;  ///< per vehicle
};

[[nodiscard]] FirstStage first_stage_of(const Solution& solution);

class InfeasibleFirstStage : public std::runtime_error {
 public:
  InfeasibleFirstStage(std::string family, const std::string& message)
      : std::runtime_error(family + ": " + message), family_(std::move(family)) {}
  /// "assignment", "degree", "depot" or "subtour".
  [[nodiscard]] const std::string& family() const noexcept { return family_; }

 private:
  std::string family_;
};

/// Follows each vehicle's arcs from its depot. Throws InfeasibleFirstStage
/// when the arcs are not one closed tour through exactly the assigned targets.
[[nodiscard]] std::vector<std::vector<int>> reconstruct_tours(const Instance& instance, const FirstStage& first_stage);

struct FixedEvaluation {
  double first_stage_cost = 0.0;
  double expected_penalty = 0.0;
  double total = 0.0;
  std::vector<std::vector<int>> tours;
};

/// The two-stage objective with (x, y) held fixed.
[[nodiscard]] FixedEvaluation evaluate_fixed_first_stage(const Instance& instance, const FirstStage& first_stage);
[[nodiscard]] FixedEvaluation evaluate_fixed_first_stage(const Instance& instance, const std::vector<CostMatrix>& costs,
                                                         const FirstStage& first_stage);

}  // namespace stochroute
