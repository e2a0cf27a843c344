#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stochroute/linear_model.hpp"

namespace stochroute {

enum class SolveStatus { Optimal, TimeLimit, NodeFailure };

[[nodiscard]] const char* to_string(SolveStatus status) noexcept;

struct SolveStats {
  std::int64_t nodes = 0;
  std::int64_t cuts_added = 0;
  std::int64_t integer_separations = 0;
  std::int64_t fractional_separations = 0;
  std::int64_t lp_iterations = 0;
  std::int64_t lp_failures = 0;
  double root_bound = 0.0;
  double wall_seconds = 0.0;
};

/// One record per incumbent or bound change.
struct LogRecord {
  double seconds = 0.0;
  std::int64_t node = 0;
  double incumbent = 0.0;
  double bound = 0.0;
  std::string event;
};

struct Solution {
  SolveStatus status = SolveStatus::TimeLimit;
  ModelKind kind = ModelKind::Stochastic;
  /// Per vehicle: depot, targets in visiting order, depot again (global
  /// vertex ids). Empty when the vehicle stays home.
  std::vector<std::vector<int>> tours;
  /// Serving vehicle of every target.
  std::vector<int> owner;
  /// z_k^ω for the stochastic model, z_k (one slot) for the expected-value model.
  std::vector<std::vector<double>> excess;
  double first_stage_cost = 0.0;
  double expected_penalty = 0.0;
  double objective = 0.0;
  double bound = 0.0;
  double gap = 0.0;
  SolveStats stats;
  std::vector<LogRecord> log;

  [[nodiscard]] bool certified() const noexcept { return status == SolveStatus::Optimal; }
};

}  // namespace stochroute
