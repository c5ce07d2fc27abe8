#pragma once

#include <numbers>

namespace sensim::units {

inline constexpr double standard_gravity = 9.80665;  // m/s^2

constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

/// Datasheet milli-g figures to m/s^2.
constexpr double mg_to_mps2(double mg) { return mg * 1.0e-3 * standard_gravity; }

/// Per-hour rates to per-second.
constexpr double per_hour_to_per_second(double x) { return x / 3600.0; }

}  // namespace sensim::units
