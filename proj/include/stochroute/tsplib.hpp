#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stochroute {

class TsplibError : public std::runtime_error {
 public:
  enum class Kind { MalformedHeader, MissingCoordinates, CountMismatch, BadRecord };

  TsplibError(Kind kind, std::size_t line, const std::string& message);

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

struct TsplibNode {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
};

struct TsplibDocument {
  std::string name;
  std::string type;
  std::string edge_weight_type;
  std::size_t dimension = 0;
  std::vector<TsplibNode> nodes;      ///< NODE_COORD_SECTION, else DISPLAY_DATA_SECTION
  std::vector<double> edge_weights;   ///< raw EDGE_WEIGHT_SECTION tokens, unused downstream
};

/// Parses a TSPLIB document. Coordinates come from NODE_COORD_SECTION when
/// present, otherwise DISPLAY_DATA_SECTION, in file order.
[[nodiscard]] TsplibDocument parse_tsplib(std::string_view text);

[[nodiscard]] TsplibDocument load_tsplib_file(const std::string& path);

}  // namespace stochroute
