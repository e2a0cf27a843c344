#pragma once

#include <string>

#include "stochroute/instance.hpp"

namespace stochroute {

inline constexpr int kInstanceFormatVersion = 1;

/// JSON text per docs/instance_format.md; doubles are written in shortest
/// round-trip form so load_instance(save_instance(x)) == x.
[[nodiscard]] std::string save_instance(const Instance& instance);

/// Parses and validates. Schema problems raise ValidationError naming the
/// JSON path; invariant violations are rejected the same way.
[[nodiscard]] Instance load_instance(const std::string& text);

void write_instance_file(const Instance& instance, const std::string& path);
[[nodiscard]] Instance read_instance_file(const std::string& path);

}  // namespace stochroute
