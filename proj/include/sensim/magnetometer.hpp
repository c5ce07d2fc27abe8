#pragma once

#include <cstdint>
#include <stdexcept>

#include "sensim/kinematics.hpp"
#include "sensim/random.hpp"

namespace sensim {

/// Triaxial magnetometer parameters. Field quantities in nT.
struct MagSpec {
  double white_noise = 0.0;           // nT * sqrt(s)
  double scale_factor_sigma = 0.0;    // dimensionless
  double cross_coupling_sigma = 0.0;  // dimensionless
  double hard_iron_sigma = 0.0;       // nT, fixed per aircraft
  double bias_offset_sigma = 0.0;     // nT, resampled per flight
  double dt = 0.01;                   // s

  void validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("magnetometer dt must be positive");
    if (white_noise < 0.0 || scale_factor_sigma < 0.0 || cross_coupling_sigma < 0.0 ||
        hard_iron_sigma < 0.0 || bias_offset_sigma < 0.0) {
      throw std::invalid_argument("magnetometer sigmas must be non-negative");
    }
  }
};

/// Fixed part of one aircraft's magnetometer installation: the combined soft
/// iron / scale factor / cross coupling matrix and the hard iron field. Both
/// are constant for the life of the airframe.
struct MagModel {
  Mat3 response = Mat3::Identity();
  Vec3 hard_iron = Vec3::Zero();
};

/// Twelve draws on the fixed stream: three for the hard iron vector, then
/// nine filling the response perturbation row-major. The response is the
/// identity plus the perturbation, so diagonals come out N(1, s^2) and
/// off-diagonals N(0, m^2).
inline MagModel sample_mag_fixed(const MagSpec& spec, GaussianStream& fixed) {
  MagModel model;
  model.hard_iron = spec.hard_iron_sigma * fixed.next_vec3();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double sigma = i == j ? spec.scale_factor_sigma : spec.cross_coupling_sigma;
      model.response(i, j) += sigma * fixed.next();
    }
  }
  return model;
}

/// Per-flight magnetometer. The bias offset is drawn once at power-up (three
/// draws); each measurement then consumes three white-noise draws.
class Magnetometer {
 public:
  Magnetometer(const MagSpec& spec, const MagModel& model, std::uint64_t run_seed)
      : spec_(spec), model_(model), run_(run_seed) {
    spec_.validate();
    offset_ = spec_.bias_offset_sigma * run_.next_vec3();
  }

  /// Body-frame field measurement for the true NED field and body attitude
  /// (r_bn maps NED components to body components).
  Vec3 measure(const Vec3& field_ned, const Mat3& r_bn) {
    last_noise_ = spec_.white_noise / std::sqrt(spec_.dt) * run_.next_vec3();
    last_meas_ = model_.hard_iron + offset_ + model_.response * (r_bn * field_ned) + last_noise_;
    return last_meas_;
  }

  /// Everything except white noise in the latest measurement.
  Vec3 full_error(const Vec3& field_ned, const Mat3& r_bn) const {
    return last_meas_ - r_bn * field_ned - last_noise_;
  }

  const MagModel& model() const { return model_; }
  const Vec3& bias_offset() const { return offset_; }
  const Vec3& last_noise() const { return last_noise_; }

 private:
  MagSpec spec_;
  MagModel model_;
  GaussianStream run_;
  Vec3 offset_ = Vec3::Zero();
  Vec3 last_noise_ = Vec3::Zero();
  Vec3 last_meas_ = Vec3::Zero();
};

}  // namespace sensim
