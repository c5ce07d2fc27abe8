#pragma once

#include <cmath>

#include "sensim/kinematics.hpp"

namespace sensim {

/// Geodetic coordinates on the WGS-84 ellipsoid: longitude and latitude in
/// radians, altitude in metres.
struct Geodetic {
  double longitude = 0.0;
  double latitude = 0.0;
  double altitude = 0.0;
};

namespace wgs84 {

inline constexpr double semi_major_axis = 6378137.0;  // m
inline constexpr double flattening = 1.0 / 298.257223563;
inline constexpr double eccentricity_sq = flattening * (2.0 - flattening);

/// Meridian radius of curvature at a latitude.
inline double meridian_radius(double latitude) {
  const double s = std::sin(latitude);
  const double d = 1.0 - eccentricity_sq * s * s;
  return semi_major_axis * (1.0 - eccentricity_sq) / (d * std::sqrt(d));
}

/// Prime-vertical radius of curvature at a latitude.
inline double normal_radius(double latitude) {
  const double s = std::sin(latitude);
  return semi_major_axis / std::sqrt(1.0 - eccentricity_sq * s * s);
}

}  // namespace wgs84

/// Shifts a geodetic position by a small local NED offset in metres.
inline Geodetic geodetic_offset(const Geodetic& base, const Vec3& ned) {
  const double rm = wgs84::meridian_radius(base.latitude) + base.altitude;
  const double rn = wgs84::normal_radius(base.latitude) + base.altitude;
  return {base.longitude + ned.y() / (rn * std::cos(base.latitude)),
          base.latitude + ned.x() / rm,
          base.altitude - ned.z()};
}

}  // namespace sensim
