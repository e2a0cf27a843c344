#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "stochroute/instance.hpp"
#include "stochroute/tsplib.hpp"

namespace stochroute {

/// Builds a random instance over the given target coordinates:
///  - depots uniform in the targets' bounding box, headings uniform in [0, 2π)
///  - vehicle k (1-based) gets turn radius 3·k·g/100, g the largest coordinate
///  - f distinct required targets per vehicle
///  - τ i.i.d. uniform on config.service_range, equiprobable scenarios
///  - τ̄ = scenario mean + uniform draw from config.tau_bar_offset
/// The result is named "<base>-<n>-<f>" and is a pure function of the inputs.
[[nodiscard]] Instance generate_instance(std::span<const TsplibNode> coords, const std::string& base_name,
                                         int vehicles, int required_per_vehicle, int num_scenarios,
                                         std::uint64_t seed, const GenerationConfig& config = {});

}  // namespace stochroute
