#pragma once
/**
 * @file  report.hpp
 * @brief Run records, result tables and SVG tour plots for the command-line
 *        front end.
 *
 * Records are JSON objects. Everything outside the "timing" member is a
 * pure function of the inputs; table and plot emitters are pure functions
 * of the records they are given.
 */

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "stochroute/branch_and_cut.hpp"
#include "stochroute/instance.hpp"
#include "stochroute/solution.hpp"
#include "stochroute/vss.hpp"

namespace stochroute::report {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSolveFormat = "stochroute-result";
inline constexpr const char* kVssFormat = "stochroute-vss";

/// The benchmark grid: n = 1..5 vehicles, f ∈ {1, 3, 5} required
/// targets per vehicle, f = 0 for the single vehicle.
[[nodiscard]] std::vector<std::pair<int, int>> suite_grid();

[[nodiscard]] const char* mode_name(ModelKind kind);
[[nodiscard]] Json params_json(const Params& params);

[[nodiscard]] Json solve_record(const Instance& instance, const Solution& solution, const Params& params);
[[nodiscard]] Json vss_record(const Instance& instance, const VssReport& report, const Params& params);

/// Tours, owner and costs of a solve record. Throws std::invalid_argument
/// when the record is not a solve record.
[[nodiscard]] Solution solution_from_record(const Json& record);

/// Computation-time table (one row per VSS record): instance, stochastic
/// and expected-value solve times, nodes and cuts of the stochastic solve.
[[nodiscard]] std::string time_table_markdown(std::vector<Json> records);
[[nodiscard]] std::string time_table_csv(std::vector<Json> records);
/// VSS table: instance, 𝒟*, 𝒮*, VSS.
[[nodiscard]] std::string vss_table_markdown(std::vector<Json> records);
[[nodiscard]] std::string vss_table_csv(std::vector<Json> records);
/// Connectivity cuts added per instance for both models.
[[nodiscard]] std::string cuts_csv(std::vector<Json> records);
/// Extra time the stochastic model needs over the expected-value model.
[[nodiscard]] std::string extra_time_csv(std::vector<Json> records);

struct PlotOptions {
  double width = 800.0;  ///< pixels; height follows the aspect ratio
  /// Sampling step along each Dubins path; ≤ 0 picks one from the smallest
  /// turn radius.
  double step = 0.0;
};

/// Targets, depots, heading glyphs and one stroke per vehicle tour. The
/// text element with id "length" carries the total sampled curve length.
/// Throws std::invalid_argument when the record does not fit the instance.
[[nodiscard]] std::string render_svg(const Instance& instance, const Json& solve_record, const PlotOptions& options = {});

/// Total length of the sampled tour curves that render_svg draws.
[[nodiscard]] double sampled_tour_length(const Instance& instance, const Solution& solution, double step);

}  // namespace stochroute::report
