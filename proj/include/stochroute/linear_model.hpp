#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace stochroute {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Sense { LessEqual, GreaterEqual, Equal };

struct Column {
  std::string name;
  double cost = 0.0;
  double lower = 0.0;
  double upper = kInfinity;
  bool integer = false;
};

/// Sparse row: Σ value[i]·x[index[i]] (sense) rhs.
struct Row {
  std::string name;
  std::vector<int> index;
  std::vector<double> value;
  Sense sense = Sense::GreaterEqual;
  double rhs = 0.0;

  [[nodiscard]] double activity(const std::vector<double>& x) const;
  /// Amount by which x violates the row (0 when satisfied).
  [[nodiscard]] double violation(const std::vector<double>& x) const;
};

enum class ModelKind { Stochastic, ExpectedValue, Generic };

/// Minimisation MILP in column/row form.
class LinearModel {
 public:
  ModelKind kind = ModelKind::Generic;
  std::string instance_name;

  int add_column(Column column);
  int add_row(Row row);

  [[nodiscard]] std::size_t num_columns() const noexcept { return columns_.size(); }
  [[nodiscard]] std::size_t num_rows() const noexcept { return rows_.size(); }
  [[nodiscard]] const std::vector<Column>& columns() const noexcept { return columns_; }
  [[nodiscard]] const std::vector<Row>& rows() const noexcept { return rows_; }
  [[nodiscard]] Column& column(std::size_t j) { return columns_[j]; }
  [[nodiscard]] const Column& column(std::size_t j) const { return columns_[j]; }
  [[nodiscard]] const Row& row(std::size_t i) const { return rows_[i]; }

  [[nodiscard]] double objective(const std::vector<double>& x) const;

  /// Throws std::invalid_argument on bad column references or inverted bounds.
  void validate() const;

  /// Free-format MPS text; binaries inside MARKER blocks.
  void write_mps(std::ostream& out) const;

 private:
  std::vector<Column> columns_;
  std::vector<Row> rows_;
};

}  // namespace stochroute
