#pragma once
/**
 * @file  instance.hpp
 * @brief Problem datum for multi-depot heterogeneous vehicle path planning
 *        with random service times.
 *
 * Vertex numbering used throughout the library: targets are 0..|T|-1 and the
 * depot of vehicle k is vertex |T| + k.
 */

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stochroute/dubins.hpp"

namespace stochroute {

/// Raised when an instance violates a structural invariant. `path()` names
/// the offending field, e.g. "scenarios.probabilities".
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  [[nodiscard]] const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

struct Vehicle {
  int depot = 0;  ///< index into Instance::depots
  double turn_radius = 1.0;
  double gamma = 0.0;  ///< penalty per unit of excess service time

  friend bool operator==(const Vehicle&, const Vehicle&) = default;
};

/// Finite service-time distribution: τ[target][vehicle][scenario] with
/// scenario probabilities.
class ScenarioSet {
 public:
  ScenarioSet() = default;
  ScenarioSet(std::size_t targets, std::size_t vehicles, std::size_t scenarios);

  [[nodiscard]] std::size_t num_scenarios() const noexcept { return prob_.size(); }
  [[nodiscard]] std::size_t num_targets() const noexcept { return targets_; }
  [[nodiscard]] std::size_t num_vehicles() const noexcept { return vehicles_; }

  [[nodiscard]] double tau(std::size_t target, std::size_t vehicle, std::size_t scenario) const {
    return tau_[index(target, vehicle, scenario)];
  }
  double& tau(std::size_t target, std::size_t vehicle, std::size_t scenario) {
    return tau_[index(target, vehicle, scenario)];
  }
  [[nodiscard]] double prob(std::size_t scenario) const { return prob_[scenario]; }
  double& prob(std::size_t scenario) { return prob_[scenario]; }
  [[nodiscard]] const std::vector<double>& probabilities() const noexcept { return prob_; }

  /// Σ_ω p^ω τ_ik^ω, summed in scenario order.
  [[nodiscard]] double expected_tau(std::size_t target, std::size_t vehicle) const;

  friend bool operator==(const ScenarioSet&, const ScenarioSet&) = default;

 private:
  [[nodiscard]] std::size_t index(std::size_t i, std::size_t k, std::size_t w) const noexcept {
    return (i * vehicles_ + k) * prob_.size() + w;
  }

  std::size_t targets_ = 0;
  std::size_t vehicles_ = 0;
  std::vector<double> tau_;
  std::vector<double> prob_;
};

struct GenerationConfig {
  std::pair<double, double> service_range{5.0, 15.0};
  std::pair<double, double> tau_bar_offset{-3.0, 3.0};
  double gamma = 1000.0;

  friend bool operator==(const GenerationConfig&, const GenerationConfig&) = default;
};

/// How a generated instance was produced; absent for hand-written files.
struct Provenance {
  std::string source;
  std::uint64_t seed = 0;
  int vehicles = 0;
  int required_per_vehicle = 0;
  GenerationConfig config;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct Instance {
  std::string name;
  std::vector<Pose> targets;
  std::vector<Pose> depots;
  std::vector<Vehicle> vehicles;
  std::vector<std::vector<int>> required;  ///< R_k, one list per vehicle
  ScenarioSet scenarios;
  std::vector<double> tau_bar;  ///< [target * |K| + vehicle]
  std::optional<Provenance> provenance;

  [[nodiscard]] std::size_t num_targets() const noexcept { return targets.size(); }
  [[nodiscard]] std::size_t num_vehicles() const noexcept { return vehicles.size(); }
  [[nodiscard]] std::size_t num_scenarios() const noexcept { return scenarios.num_scenarios(); }

  [[nodiscard]] double cap(std::size_t target, std::size_t vehicle) const {
    return tau_bar[target * vehicles.size() + vehicle];
  }
  double& cap(std::size_t target, std::size_t vehicle) {
    return tau_bar[target * vehicles.size() + vehicle];
  }

  /// Vertex id of the depot of vehicle k.
  [[nodiscard]] int depot_vertex(std::size_t vehicle) const {
    return static_cast<int>(targets.size()) + static_cast<int>(vehicle);
  }
  [[nodiscard]] const Pose& depot_pose(std::size_t vehicle) const {
    return depots[static_cast<std::size_t>(vehicles[vehicle].depot)];
  }
  [[nodiscard]] const Pose& vertex_pose(int vertex) const;

  /// Vehicle that must serve the target, or -1 for a common target.
  [[nodiscard]] int required_owner(std::size_t target) const;

  /// Poses visible to vehicle k: all targets followed by its depot.
  [[nodiscard]] std::vector<Pose> vehicle_poses(std::size_t vehicle) const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Throws ValidationError on the first violated invariant.
void validate(const Instance& instance);

/// Per-vehicle travel costs over [targets..., own depot]; index |T| is the depot.
[[nodiscard]] std::vector<CostMatrix> vehicle_cost_matrices(const Instance& instance);

}  // namespace stochroute
