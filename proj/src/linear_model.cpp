#include "stochroute/linear_model.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace stochroute {

double Row::activity(const std::vector<double>& x) const {
  double sum = 0.0;
  for (std::size_t e = 0; e < index.size(); ++e) sum += value[e] * x[static_cast<std::size_t>(index[e])];
  return sum;
}

double Row::violation(const std::vector<double>& x) const {
  const double a = activity(x);
  switch (sense) {
    case Sense::LessEqual: return std::max(0.0, a - rhs);
    case Sense::GreaterEqual: return std::max(0.0, rhs - a);
    case Sense::Equal: return std::abs(a - rhs);
  }
  return 0.0;
}

int LinearModel::add_column(Column column) {
  columns_.push_back(std::move(column));
  return static_cast<int>(columns_.size() - 1);
}

int LinearModel::add_row(Row row) {
  rows_.push_back(std::move(row));
  return static_cast<int>(rows_.size() - 1);
}

double LinearModel::objective(const std::vector<double>& x) const {
  double sum = 0.0;
  for (std::size_t j = 0; j < columns_.size(); ++j) sum += columns_[j].cost * x[j];
  return sum;
}

void LinearModel::validate() const {
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    const Column& c = columns_[j];
    if (c.lower > c.upper) throw std::invalid_argument("column " + c.name + ": lower > upper");
    if (c.integer && c.lower == 0.0 && c.upper == 1.0) continue;
    if (c.integer && (c.lower < 0.0 || c.upper > 1.0))
      throw std::invalid_argument("column " + c.name + ": binary bounds must lie in [0,1]");
  }
  for (const Row& r : rows_) {
    if (r.index.size() != r.value.size()) throw std::invalid_argument("row " + r.name + ": ragged entries");
    for (int j : r.index)
      if (j < 0 || static_cast<std::size_t>(j) >= columns_.size())
        throw std::invalid_argument("row " + r.name + ": column index out of range");
  }
}

void LinearModel::write_mps(std::ostream& out) const {
  out << "NAME " << (instance_name.empty() ? "model" : instance_name) << "\n";
  out << "ROWS\n N obj\n";
  for (const Row& r : rows_) {
    const char* tag = r.sense == Sense::LessEqual ? "L" : r.sense == Sense::GreaterEqual ? "G" : "E";
    out << " " << tag << " " << r.name << "\n";
  }

  // Column-major view of the rows.
  std::vector<std::vector<std::pair<std::size_t, double>>> by_column(columns_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (std::size_t e = 0; e < rows_[i].index.size(); ++e)
      by_column[static_cast<std::size_t>(rows_[i].index[e])].emplace_back(i, rows_[i].value[e]);

  out << "COLUMNS\n";
  out.precision(17);
  bool in_marker = false;
  int marker = 0;
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    const Column& c = columns_[j];
    if (c.integer != in_marker) {
      out << " M" << marker++ << " 'MARKER' " << (c.integer ? "'INTORG'" : "'INTEND'") << "\n";
      in_marker = c.integer;
    }
    if (c.cost != 0.0) out << " " << c.name << " obj " << c.cost << "\n";
    for (const auto& [i, v] : by_column[j]) out << " " << c.name << " " << rows_[i].name << " " << v << "\n";
  }
  if (in_marker) out << " M" << marker << " 'MARKER' 'INTEND'\n";

  out << "RHS\n";
  for (const Row& r : rows_)
    if (r.rhs != 0.0) out << " rhs " << r.name << " " << r.rhs << "\n";

  out << "BOUNDS\n";
  for (const Column& c : columns_) {
    if (c.lower == c.upper) {
      out << " FX bnd " << c.name << " " << c.lower << "\n";
      continue;
    }
    if (c.integer && c.lower == 0.0 && c.upper == 1.0) {
      out << " BV bnd " << c.name << "\n";
      continue;
    }
    if (std::isinf(c.lower)) out << " MI bnd " << c.name << "\n";
    else if (c.lower != 0.0) out << " LO bnd " << c.name << " " << c.lower << "\n";
    if (!std::isinf(c.upper)) out << " UP bnd " << c.name << " " << c.upper << "\n";
  }
  out << "ENDATA\n";
}

}  // namespace stochroute
