#include "stochroute/tsplib.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

namespace stochroute {

TsplibError::TsplibError(Kind kind, std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), kind_(kind), line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

bool starts_keyword(std::string_view line) {
  return !line.empty() && std::isalpha(static_cast<unsigned char>(line.front()));
}

enum class Section { None, NodeCoord, DisplayData, EdgeWeight, Other };

struct Record {
  std::size_t line;
  std::vector<TsplibNode> nodes;
};

}  // namespace

TsplibDocument parse_tsplib(std::string_view text) {
  using Kind = TsplibError::Kind;
  TsplibDocument doc;
  std::optional<std::size_t> dimension;
  std::optional<Record> node_coords;
  std::optional<Record> display;
  Section section = Section::None;
  std::vector<TsplibNode>* target = nullptr;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }

    if (starts_keyword(line)) {
      const auto colon = line.find(':');
      const std::string key = upper(trim(line.substr(0, colon)));
      if (key == "EOF") break;
      target = nullptr;
      if (colon == std::string_view::npos) {
        if (key == "NODE_COORD_SECTION") {
          section = Section::NodeCoord;
          node_coords = Record{line_no, {}};
          target = &node_coords->nodes;
        } else if (key == "DISPLAY_DATA_SECTION") {
          section = Section::DisplayData;
          display = Record{line_no, {}};
          target = &display->nodes;
        } else if (key == "EDGE_WEIGHT_SECTION") {
          section = Section::EdgeWeight;
        } else if (key.ends_with("_SECTION")) {
          section = Section::Other;
        } else {
          throw TsplibError(Kind::MalformedHeader, line_no, "expected 'KEY : VALUE', got '" + std::string(line) + "'");
        }
        continue;
      }
      section = Section::None;
      const std::string value(trim(line.substr(colon + 1)));
      if (key == "NAME") {
        doc.name = value;
      } else if (key == "TYPE") {
        doc.type = value;
      } else if (key == "EDGE_WEIGHT_TYPE") {
        doc.edge_weight_type = value;
      } else if (key == "DIMENSION") {
        std::size_t dim = 0;
        const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), dim);
        if (ec != std::errc{} || ptr != value.data() + value.size() || dim == 0)
          throw TsplibError(Kind::MalformedHeader, line_no, "DIMENSION must be a positive integer");
        dimension = dim;
      } else if (key.empty()) {
        throw TsplibError(Kind::MalformedHeader, line_no, "empty header key");
      }
      continue;
    }

    std::istringstream in{std::string(line)};
    switch (section) {
      case Section::NodeCoord:
      case Section::DisplayData: {
        TsplibNode node;
        if (!(in >> node.id >> node.x >> node.y))
          throw TsplibError(Kind::BadRecord, line_no, "expected '<id> <x> <y>'");
        target->push_back(node);
        break;
      }
      case Section::EdgeWeight: {
        double w = 0.0;
        while (in >> w) doc.edge_weights.push_back(w);
        break;
      }
      case Section::Other:
        break;
      case Section::None:
        throw TsplibError(Kind::MalformedHeader, line_no, "data outside of a section");
    }
  }

  if (!dimension) throw TsplibError(Kind::MalformedHeader, line_no, "missing DIMENSION header");
  doc.dimension = *dimension;

  const Record* chosen = node_coords ? &*node_coords : (display ? &*display : nullptr);
  if (chosen == nullptr)
    throw TsplibError(Kind::MissingCoordinates, line_no,
                      "neither NODE_COORD_SECTION nor DISPLAY_DATA_SECTION present");
  if (chosen->nodes.size() != doc.dimension)
    throw TsplibError(Kind::CountMismatch, chosen->line,
                      "DIMENSION is " + std::to_string(doc.dimension) + " but section holds " +
                          std::to_string(chosen->nodes.size()) + " coordinates");
  doc.nodes = chosen->nodes;
  return doc;
}

TsplibDocument load_tsplib_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open TSPLIB file " + path);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return parse_tsplib(buffer.str());
}

}  // namespace stochroute
