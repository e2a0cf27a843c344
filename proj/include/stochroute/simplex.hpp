#pragma once
/**
 * @file  simplex.hpp
 * @brief Bounded-variable revised simplex for the LP relaxations solved
 *        inside branch-and-cut.
 *
 * Every row i gets a logical variable s_i with A x − s = 0 and the row's
 * range as bounds on s_i, so structural and logical variables share one
 * bounded-variable treatment. A primal feasible basis goes to the primal
 * simplex. Otherwise boxed nonbasics are moved to the bound their reduced
 * cost favours and the dual simplex runs (steepest-edge pricing, long-step
 * ratio test with bound flips); primal phase 1 / phase 2 is the fallback
 * when that does not make the basis dual feasible.
 * Warm starts take a parent basis, possibly extended by new cut rows or
 * with changed bounds.
 *
 * The basis is factored on its structural kernel: with P the rows whose
 * logical is basic and Q the remaining rows, only the |Q|×|Q| block
 * A[Q, structural basics] needs a sparse LU. Pivots append product-form
 * eta vectors; the kernel is refactored every `refactor_interval` pivots.
 */

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "stochroute/linear_model.hpp"

namespace stochroute {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

[[nodiscard]] const char* to_string(LpStatus status) noexcept;

enum class VarStatus : std::uint8_t { Basic, AtLower, AtUpper, Free };

/// Status of every structural column followed by every row's logical.
struct Basis {
  std::vector<VarStatus> status;

  [[nodiscard]] bool empty() const noexcept { return status.empty(); }
  friend bool operator==(const Basis&, const Basis&) = default;
};

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> primal;          ///< structural values
  std::vector<double> dual;            ///< row multipliers π, d = c − Aᵀπ
  std::vector<double> reduced_cost;    ///< structural reduced costs
  double objective = 0.0;
  Basis basis;
  std::int64_t iterations = 0;
};

struct SimplexOptions {
  std::int64_t max_iterations = 1'000'000;
  int refactor_interval = 50;
  double pivot_tolerance = 1e-9;
  double primal_tolerance = 1e-9;
  double dual_tolerance = 1e-9;
  /// Consecutive degenerate pivots before switching to Bland's rule.
  int stall_threshold = 50;
};

class SimplexSolver {
 public:
  explicit SimplexSolver(const LinearModel& model, SimplexOptions options = {});
  ~SimplexSolver();
  SimplexSolver(SimplexSolver&&) noexcept;
  SimplexSolver& operator=(SimplexSolver&&) noexcept;
  SimplexSolver(const SimplexSolver&) = delete;
  SimplexSolver& operator=(const SimplexSolver&) = delete;

  [[nodiscard]] std::size_t num_columns() const noexcept;
  [[nodiscard]] std::size_t num_rows() const noexcept;

  /// Optimises from the current basis; the first call starts cold.
  LpSolution solve();
  /// Installs `warm` (padded with basic logicals for rows added since it was
  /// taken) and reoptimises.
  LpSolution solve(const Basis& warm);

  /// Appends rows; their logicals enter the basis.
  void add_rows(std::span<const Row> rows);
  /// add_rows followed by a dual-simplex reoptimisation.
  LpSolution add_rows_and_reoptimize(std::span<const Row> rows);

  void set_bounds(std::size_t column, double lower, double upper);
  [[nodiscard]] double lower(std::size_t column) const;
  [[nodiscard]] double upper(std::size_t column) const;

  [[nodiscard]] Basis basis() const;
  /// Forgets the basis; the next solve() starts cold.
  void reset_basis();

  /// Pivot count over the lifetime of the solver.
  [[nodiscard]] std::int64_t total_iterations() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// One-shot solve of the continuous relaxation of `model`.
[[nodiscard]] LpSolution solve_lp(const LinearModel& model, const Basis* warm = nullptr,
                                  SimplexOptions options = {});

}  // namespace stochroute
