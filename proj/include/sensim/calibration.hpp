#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "sensim/imu.hpp"
#include "sensim/kinematics.hpp"
#include "sensim/magnetometer.hpp"

namespace sensim {

/// Coefficients a calibration (or swinging) campaign would hand to the
/// sensor processors.
struct CalibrationEstimate {
  Mat3 acc_scale_cross = Mat3::Identity();
  Mat3 gyr_scale_cross = Mat3::Identity();
  Mat3 mag_response = Mat3::Identity();
  Vec3 acc_bias_offset = Vec3::Zero();
  Vec3 gyr_bias_offset = Vec3::Zero();
  Vec3 mag_hard_iron = Vec3::Zero();
  Vec3 mag_bias_offset = Vec3::Zero();
};

namespace detail {

inline Mat3 checked_inverse(const Mat3& m, const char* what) {
  const double det = m.determinant();
  if (!(std::abs(det) > 1.0e-12)) {
    throw std::domain_error(std::string("singular ") + what + " matrix");
  }
  return m.inverse();
}

}  // namespace detail

/// Undoes the estimated scale/cross-coupling map and bias offsets on a pair
/// of platform-frame inertial measurements.
inline std::pair<Vec3, Vec3> apply_imu_correction(const CalibrationEstimate& est,
                                                  const Vec3& specific_force,
                                                  const Vec3& angular_rate) {
  const Vec3 f = detail::checked_inverse(est.acc_scale_cross, "accelerometer") * specific_force -
                 est.acc_bias_offset;
  const Vec3 w = detail::checked_inverse(est.gyr_scale_cross, "gyroscope") * angular_rate -
                 est.gyr_bias_offset;
  return {f, w};
}

/// Undoes the estimated magnetometer response, hard iron and bias offset.
inline Vec3 apply_swinging_correction(const CalibrationEstimate& est, const Vec3& field) {
  return detail::checked_inverse(est.mag_response, "magnetometer") * field -
         est.mag_hard_iron - est.mag_bias_offset;
}

/// Folds a calibration campaign into a triad spec by shrinking the fixed
/// contributions (scale factor, cross coupling) by the given fraction. Bias
/// parameters are untouched: the offsets seen in flight have nothing to do
/// with the ones estimated on the bench.
inline TriadSpec derate_spec(TriadSpec spec, double reduction_fixed) {
  if (!(reduction_fixed >= 0.0 && reduction_fixed <= 1.0)) {
    throw std::invalid_argument("reduction must lie in [0, 1]");
  }
  spec.scale_factor_sigma *= 1.0 - reduction_fixed;
  spec.cross_coupling_sigma *= 1.0 - reduction_fixed;
  return spec;
}

/// Swinging equivalent for the magnetometer: scale factor, cross coupling
/// and hard iron shrink; the run-to-run offset and the noise stay.
inline MagSpec derate_spec(MagSpec spec, double reduction_fixed) {
  if (!(reduction_fixed >= 0.0 && reduction_fixed <= 1.0)) {
    throw std::invalid_argument("reduction must lie in [0, 1]");
  }
  spec.scale_factor_sigma *= 1.0 - reduction_fixed;
  spec.cross_coupling_sigma *= 1.0 - reduction_fixed;
  spec.hard_iron_sigma *= 1.0 - reduction_fixed;
  return spec;
}

}  // namespace sensim
