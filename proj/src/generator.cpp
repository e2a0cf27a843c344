#include "stochroute/generator.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "stochroute/rng.hpp"

namespace stochroute {

namespace {

// Sub-stream ids; each protocol step draws from its own stream so changing
// one step's sample count leaves the others untouched.
enum Stream : std::uint64_t { kDepots = 1, kHeadings, kRequired, kServiceTimes, kOffsets };

}  // namespace

Instance generate_instance(std::span<const TsplibNode> coords, const std::string& base_name,
                           int vehicles, int required_per_vehicle, int num_scenarios,
                           std::uint64_t seed, const GenerationConfig& config) {
  if (coords.empty()) throw std::invalid_argument("generate_instance: no coordinates");
  if (vehicles < 1) throw std::invalid_argument("generate_instance: need at least one vehicle");
  if (required_per_vehicle < 0)
    throw std::invalid_argument("generate_instance: required targets per vehicle must be >= 0");
  if (num_scenarios < 1) throw std::invalid_argument("generate_instance: scenario count must be positive");
  const auto nt = coords.size();
  const auto nk = static_cast<std::size_t>(vehicles);
  const auto f = static_cast<std::size_t>(required_per_vehicle);
  if (nk * f > nt)
    throw std::invalid_argument("generate_instance: " + std::to_string(vehicles) + " vehicles x " +
                                std::to_string(required_per_vehicle) + " required targets exceeds " +
                                std::to_string(nt) + " targets");
  if (!(config.service_range.first >= 0.0) || config.service_range.second < config.service_range.first)
    throw std::invalid_argument("generate_instance: invalid service range");
  if (config.tau_bar_offset.second < config.tau_bar_offset.first)
    throw std::invalid_argument("generate_instance: invalid tau_bar offset range");

  const Rng root(seed);
  Instance in;
  in.name = base_name + "-" + std::to_string(vehicles) + "-" + std::to_string(required_per_vehicle);

  double min_x = coords[0].x, max_x = coords[0].x, min_y = coords[0].y, max_y = coords[0].y;
  for (const auto& c : coords) {
    min_x = std::min(min_x, c.x);
    max_x = std::max(max_x, c.x);
    min_y = std::min(min_y, c.y);
    max_y = std::max(max_y, c.y);
  }

  Rng headings = root.split(kHeadings);
  in.targets.reserve(nt);
  for (const auto& c : coords) in.targets.emplace_back(c.x, c.y, headings.uniform(0.0, kTwoPi));

  Rng depot_rng = root.split(kDepots);
  for (std::size_t k = 0; k < nk; ++k) {
    const double x = depot_rng.uniform(min_x, max_x);
    const double y = depot_rng.uniform(min_y, max_y);
    in.depots.emplace_back(x, y, headings.uniform(0.0, kTwoPi));
  }

  double grid = -std::numeric_limits<double>::infinity();
  for (const Pose& p : in.targets) grid = std::max({grid, p.x, p.y});
  for (const Pose& p : in.depots) grid = std::max({grid, p.x, p.y});
  if (!(grid > 0.0)) throw std::invalid_argument("generate_instance: grid size must be positive");

  for (std::size_t k = 0; k < nk; ++k)
    in.vehicles.push_back({static_cast<int>(k), 3.0 * static_cast<double>(k + 1) * grid / 100.0, config.gamma});

  // Partial Fisher-Yates: the first n·f entries are the required targets.
  Rng required_rng = root.split(kRequired);
  std::vector<int> order(nt);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = 0; i < nk * f; ++i) {
    const auto j = i + static_cast<std::size_t>(required_rng.below(nt - i));
    std::swap(order[i], order[j]);
  }
  in.required.resize(nk);
  for (std::size_t k = 0; k < nk; ++k) {
    in.required[k].assign(order.begin() + static_cast<std::ptrdiff_t>(k * f),
                          order.begin() + static_cast<std::ptrdiff_t>((k + 1) * f));
    std::sort(in.required[k].begin(), in.required[k].end());
  }

  const auto nw = static_cast<std::size_t>(num_scenarios);
  in.scenarios = ScenarioSet(nt, nk, nw);
  Rng tau_rng = root.split(kServiceTimes);
  for (std::size_t w = 0; w < nw; ++w)
    for (std::size_t i = 0; i < nt; ++i)
      for (std::size_t k = 0; k < nk; ++k)
        in.scenarios.tau(i, k, w) = tau_rng.uniform(config.service_range.first, config.service_range.second);

  Rng offset_rng = root.split(kOffsets);
  in.tau_bar.assign(nt * nk, 0.0);
  for (std::size_t i = 0; i < nt; ++i)
    for (std::size_t k = 0; k < nk; ++k) {
      double mean = 0.0;
      for (std::size_t w = 0; w < nw; ++w) mean += in.scenarios.tau(i, k, w);
      mean /= static_cast<double>(nw);
      in.cap(i, k) = mean + offset_rng.uniform(config.tau_bar_offset.first, config.tau_bar_offset.second);
    }

  in.provenance = Provenance{base_name, seed, vehicles, required_per_vehicle, config};
  validate(in);
  return in;
}

}  // namespace stochroute
