#pragma once
/**
 * @file  model_builder.hpp
 * @brief Emits the two-stage stochastic MILP and its expected-value
 *        counterpart from an Instance.
 *
 * Rows emitted (per vehicle k, target i, scenario ω):
 *   out_i_k   Σ_j x_ij^k − y_i^k = 0
 *   in_i_k    Σ_j x_ji^k − y_i^k = 0
 *   assign_i  Σ_k y_i^k = 1
 *   svc_k_w   Σ_i (τ̄_ik − τ_ik^ω) y_i^k + z_k^ω ≥ 0
 *   dout_k    Σ_j x_dj^k − h_k = 0
 *   din_k     Σ_j x_jd^k − h_k = 0
 *   link_i_k  y_i^k − h_k ≤ 0
 * Required targets are fixed through y bounds. Connectivity rows are not
 * emitted; the branch-and-cut separates them on demand.
 */

#include <cstddef>
#include <vector>

#include "stochroute/dubins.hpp"
#include "stochroute/instance.hpp"
#include "stochroute/linear_model.hpp"

namespace stochroute {

/// Column lookup for the emitted model. Vehicle-local vertex numbering: targets
/// 0..|T|-1, the vehicle's own depot is |T|.
class VariableMap {
 public:
  VariableMap() = default;
  VariableMap(std::size_t targets, std::size_t vehicles, std::size_t penalty_slots);

  [[nodiscard]] std::size_t num_targets() const noexcept { return targets_; }
  [[nodiscard]] std::size_t num_vehicles() const noexcept { return vehicles_; }
  /// |Ω| for the stochastic model, 1 for the expected-value model.
  [[nodiscard]] std::size_t penalty_slots() const noexcept { return slots_; }
  [[nodiscard]] std::size_t local_vertices() const noexcept { return targets_ + 1; }
  [[nodiscard]] std::size_t depot_local() const noexcept { return targets_; }

  [[nodiscard]] int x(std::size_t vehicle, std::size_t from, std::size_t to) const {
    return x_[(vehicle * local_vertices() + from) * local_vertices() + to];
  }
  [[nodiscard]] int y(std::size_t target, std::size_t vehicle) const { return y_[target * vehicles_ + vehicle]; }
  [[nodiscard]] int z(std::size_t vehicle, std::size_t slot) const { return z_[vehicle * slots_ + slot]; }
  [[nodiscard]] int h(std::size_t vehicle) const { return h_[vehicle]; }

  int& x(std::size_t vehicle, std::size_t from, std::size_t to) {
    return x_[(vehicle * local_vertices() + from) * local_vertices() + to];
  }
  int& y(std::size_t target, std::size_t vehicle) { return y_[target * vehicles_ + vehicle]; }
  int& z(std::size_t vehicle, std::size_t slot) { return z_[vehicle * slots_ + slot]; }
  int& h(std::size_t vehicle) { return h_[vehicle]; }

  [[nodiscard]] std::size_t num_x() const noexcept;
  [[nodiscard]] std::size_t num_y() const noexcept { return y_.size(); }
  [[nodiscard]] std::size_t num_z() const noexcept { return z_.size(); }
  [[nodiscard]] std::size_t num_h() const noexcept { return h_.size(); }

  /// True if every column in [0, columns) is referenced exactly once.
  [[nodiscard]] bool is_bijective(std::size_t columns) const;

 private:
  std::size_t targets_ = 0;
  std::size_t vehicles_ = 0;
  std::size_t slots_ = 0;
  std::vector<int> x_;
  std::vector<int> y_;
  std::vector<int> z_;
  std::vector<int> h_;
};

struct BuiltModel {
  LinearModel model;
  VariableMap vars;
  /// Per-vehicle travel costs the x objective was built from.
  std::vector<CostMatrix> costs;
};

[[nodiscard]] BuiltModel build_two_stage(const Instance& instance);
[[nodiscard]] BuiltModel build_two_stage(const Instance& instance, std::vector<CostMatrix> costs);

[[nodiscard]] BuiltModel build_evp(const Instance& instance);
[[nodiscard]] BuiltModel build_evp(const Instance& instance, std::vector<CostMatrix> costs);

}  // namespace stochroute
