#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

#include "sensim/kinematics.hpp"
#include "sensim/random.hpp"
#include "sensim/single_axis.hpp"

namespace sensim {

enum class TriadKind { accelerometer, gyroscope };

/// Stochastic description of a three-axis inertial sensor. The bias and
/// noise parameters are shared by the three axes; scale factor and cross
/// coupling describe the triad geometry. Angular quantities are rad-based.
struct TriadSpec {
  TriadKind kind = TriadKind::accelerometer;
  SingleAxisSpec axis;
  double scale_factor_sigma = 0.0;    // dimensionless, diagonal ~ N(1, s^2)
  double cross_coupling_sigma = 0.0;  // dimensionless, off-diagonal ~ N(0, m^2)

  void validate() const {
    axis.validate();
    if (scale_factor_sigma < 0.0 || cross_coupling_sigma < 0.0) {
      throw std::invalid_argument("triad sigmas must be non-negative");
    }
  }
};

/// Accelerometer triad geometry. Both matrices are lower triangular: the
/// first sensing axis is aligned with the platform x axis and the second
/// lies in the platform xy plane, which removes three of the six possible
/// misalignments. scale_cross multiplies the true platform-frame input;
/// error_transform is the map that carried the per-axis errors into the
/// platform frame.
struct AccMatrices {
  Mat3 scale_cross = Mat3::Identity();
  Mat3 error_transform = Mat3::Identity();
};

/// Gyroscope triad geometry: all six misalignments are free, so the matrix
/// is full.
struct GyrMatrices {
  Mat3 scale_cross = Mat3::Identity();
};

/// Samples the accelerometer matrices from six draws on the fixed stream:
/// three scale-factor draws (x, y, z), then three misalignment draws. The
/// same six draws build both matrices.
inline AccMatrices sample_acc_matrices(const TriadSpec& spec, GaussianStream& fixed) {
  if (spec.kind != TriadKind::accelerometer) {
    throw std::invalid_argument("accelerometer matrices need an accelerometer spec");
  }
  const double s1 = 1.0 + spec.scale_factor_sigma * fixed.next();
  const double s2 = 1.0 + spec.scale_factor_sigma * fixed.next();
  const double s3 = 1.0 + spec.scale_factor_sigma * fixed.next();
  const double c1 = spec.cross_coupling_sigma * fixed.next();
  const double c2 = spec.cross_coupling_sigma * fixed.next();
  const double c3 = spec.cross_coupling_sigma * fixed.next();

  AccMatrices out;
  out.scale_cross << s1, 0.0, 0.0,
                     c3, s2, 0.0,
                     c2, c1, s3;
  out.error_transform << s1, 0.0, 0.0,
                         c3 * s1, s2, 0.0,
                         -c2 * s1, c1 * s2, s3;
  return out;
}

/// Samples the gyroscope matrix from nine draws on the fixed stream: three
/// scale-factor draws (x, y, z), then six cross-coupling draws filling the
/// off-diagonal entries row-major.
inline GyrMatrices sample_gyr_matrices(const TriadSpec& spec, GaussianStream& fixed) {
  if (spec.kind != TriadKind::gyroscope) {
    throw std::invalid_argument("gyroscope matrices need a gyroscope spec");
  }
  const double s1 = 1.0 + spec.scale_factor_sigma * fixed.next();
  const double s2 = 1.0 + spec.scale_factor_sigma * fixed.next();
  const double s3 = 1.0 + spec.scale_factor_sigma * fixed.next();
  GyrMatrices out;
  out.scale_cross(0, 0) = s1;
  out.scale_cross(1, 1) = s2;
  out.scale_cross(2, 2) = s3;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i != j) out.scale_cross(i, j) = spec.cross_coupling_sigma * fixed.next();
    }
  }
  return out;
}

/// Rigid mounting of a sensor frame on the body: a mass-dependent lever arm
/// (the reference point is fixed to the structure while the centre of mass
/// follows the fuel load) plus a stochastic attitude, and the navigation
/// estimates of both.
struct MountingSpec {
  Vec3 lever_arm_full = Vec3::Zero();   // m, at mass_full
  Vec3 lever_arm_empty = Vec3::Zero();  // m, at mass_empty
  double mass_full = 0.0;               // kg
  double mass_empty = 0.0;              // kg
  double sigma_yaw = 0.0;               // rad
  double sigma_pitch = 0.0;             // rad
  double sigma_roll = 0.0;              // rad
  double sigma_position_est = 0.0;      // m
  double sigma_attitude_est = 0.0;      // rad
  double nominal_yaw = 0.0;             // rad; pi/2 for a sideways-mounted camera

  void validate() const {
    if (!(mass_full > mass_empty)) {
      throw std::invalid_argument("mounting needs mass_full > mass_empty");
    }
    if (sigma_yaw < 0.0 || sigma_pitch < 0.0 || sigma_roll < 0.0 ||
        sigma_position_est < 0.0 || sigma_attitude_est < 0.0) {
      throw std::invalid_argument("mounting sigmas must be non-negative");
    }
  }
};

/// Lever arm at the current mass, interpolated linearly between the full and
/// empty configurations. Masses outside [empty, full] are clamped.
inline Vec3 mounting_displacement(const MountingSpec& mount, double mass) {
  if (!(mount.mass_full > mount.mass_empty)) return mount.lever_arm_full;
  const double clamped = std::clamp(mass, mount.mass_empty, mount.mass_full);
  const double fraction = (mount.mass_full - clamped) / (mount.mass_full - mount.mass_empty);
  return mount.lever_arm_full + fraction * (mount.lever_arm_empty - mount.lever_arm_full);
}

/// One realization of a mounting: the true attitude, the estimated attitude,
/// and the estimated-minus-true lever arm offset. Fixed per aircraft.
struct MountingSample {
  EulerAngles attitude;
  EulerAngles attitude_est;
  Vec3 position_est_offset = Vec3::Zero();
  Mat3 r_bp = Mat3::Identity();      // platform (or camera) to body
  Mat3 r_bp_est = Mat3::Identity();  // believed rotation

  Vec3 lever_arm(const MountingSpec& mount, double mass) const {
    return mounting_displacement(mount, mass);
  }
  Vec3 lever_arm_est(const MountingSpec& mount, double mass) const {
    return mounting_displacement(mount, mass) + position_est_offset;
  }
};

/// Nine draws in fixed order: true yaw/pitch/roll, the three position
/// estimate offsets, the three attitude estimate offsets.
inline MountingSample sample_mounting(const MountingSpec& spec, GaussianStream& fixed) {
  MountingSample sample;
  sample.attitude = {spec.nominal_yaw + spec.sigma_yaw * fixed.next(),
                     spec.sigma_pitch * fixed.next(),
                     spec.sigma_roll * fixed.next()};
  sample.position_est_offset = spec.sigma_position_est * fixed.next_vec3();
  sample.attitude_est = {sample.attitude.yaw + spec.sigma_attitude_est * fixed.next(),
                         sample.attitude.pitch + spec.sigma_attitude_est * fixed.next(),
                         sample.attitude.roll + spec.sigma_attitude_est * fixed.next()};
  sample.r_bp = euler_to_rotmat(sample.attitude);
  sample.r_bp_est = euler_to_rotmat(sample.attitude_est);
  return sample;
}

/// Accelerometer and gyroscope triads behind one IMU mounting, producing
/// body-frame measurements.
///
/// Each triad owns one run stream. Per measurement the stream is consumed
/// axis-major: drift then noise for axis x, then y, then z. The angular-rate
/// channel must be sampled before the specific-force channel on every tick,
/// because the force equation replaces the unknown true angular state with
/// the gyroscope reading and its backward difference.
class ImuSensor {
 public:
  ImuSensor(const TriadSpec& acc, const TriadSpec& gyr, const MountingSpec& mounting,
            const AccMatrices& acc_matrices, const GyrMatrices& gyr_matrices,
            const MountingSample& mounting_sample, std::uint64_t acc_run_seed,
            std::uint64_t gyr_run_seed)
      : acc_spec_(acc),
        gyr_spec_(gyr),
        mount_spec_(mounting),
        acc_mat_(acc_matrices),
        gyr_mat_(gyr_matrices),
        mounting_(mounting_sample),
        acc_run_(acc_run_seed),
        gyr_run_(gyr_run_seed) {
    acc_spec_.validate();
    gyr_spec_.validate();
    for (auto& axis : gyr_axes_) axis = SingleAxisState::init(gyr_spec_.axis, gyr_run_);
    for (auto& axis : acc_axes_) axis = SingleAxisState::init(acc_spec_.axis, acc_run_);
  }

  /// Samples the fixed hardware realizations from the seed set (accelerometer
  /// and gyroscope matrices, platform mounting) and seeds the run streams.
  ImuSensor(const TriadSpec& acc, const TriadSpec& gyr, const MountingSpec& mounting,
            const SensorSeedSet& seeds)
      : ImuSensor(acc, gyr, mounting,
                  [&] {
                    GaussianStream fixed(seeds.fixed.acc);
                    return sample_acc_matrices(acc, fixed);
                  }(),
                  [&] {
                    GaussianStream fixed(seeds.fixed.gyr);
                    return sample_gyr_matrices(gyr, fixed);
                  }(),
                  [&] {
                    GaussianStream fixed(seeds.fixed.plat);
                    return sample_mounting(mounting, fixed);
                  }(),
                  seeds.run.acc, seeds.run.gyr) {}

  /// Body-frame gyroscope reading for the true angular rate (rad/s).
  Vec3 measure_angular_rate(const Vec3& angular_rate) {
    Vec3 error;
    for (int i = 0; i < 3; ++i) {
      error[i] = gyr_axes_[i].step(gyr_spec_.axis, 0.0, gyr_run_);
      last_gyr_noise_[i] = gyr_axes_[i].last_noise;
    }
    if (gyr_steps_ > 0) prev_rate_meas_ = last_rate_meas_;
    last_rate_meas_ = mounting_.r_bp_est *
                          (gyr_mat_.scale_cross * (mounting_.r_bp.transpose() * angular_rate)) +
                      error;
    ++gyr_steps_;
    return last_rate_meas_;
  }

  /// Body-frame accelerometer reading. Needs the true specific force,
  /// angular rate and angular acceleration (rad-based) plus the current
  /// aircraft mass for the lever arm. measure_angular_rate must already have
  /// run on this tick.
  Vec3 measure_specific_force(const Vec3& specific_force, const Vec3& angular_rate,
                              const Vec3& angular_acceleration, double mass) {
    if (gyr_steps_ != acc_steps_ + 1) {
      throw std::logic_error("measure_angular_rate must run before measure_specific_force on each tick");
    }
    Vec3 error;
    for (int i = 0; i < 3; ++i) {
      error[i] = acc_axes_[i].step(acc_spec_.axis, 0.0, acc_run_);
      last_acc_noise_[i] = acc_axes_[i].last_noise;
    }

    const Vec3 lever = mounting_displacement(mount_spec_, mass);
    const Vec3 lever_est = lever + mounting_.position_est_offset;

    const Vec3 at_reference_point = specific_force + angular_acceleration.cross(lever) +
                                    angular_rate.cross(angular_rate.cross(lever));
    const Vec3 sandwiched =
        mounting_.r_bp_est * (acc_mat_.scale_cross * (mounting_.r_bp.transpose() * at_reference_point));

    // Angular acceleration as the IMU sees it: backward difference of the
    // gyroscope readings, zero on the very first tick.
    const Vec3 rate_derivative =
        acc_steps_ > 0 ? Vec3(((last_rate_meas_ - prev_rate_meas_) / gyr_spec_.axis.dt))
                       : Vec3(Vec3::Zero());

    last_force_meas_ = sandwiched - rate_derivative.cross(lever_est) -
                       last_rate_meas_.cross(last_rate_meas_.cross(lever_est)) + error;
    ++acc_steps_;
    return last_force_meas_;
  }

  /// Everything except white noise: latest measurement minus truth minus the
  /// recorded noise draw.
  Vec3 gyr_full_error(const Vec3& true_angular_rate) const {
    return last_rate_meas_ - true_angular_rate - last_gyr_noise_;
  }
  Vec3 acc_full_error(const Vec3& true_specific_force) const {
    return last_force_meas_ - true_specific_force - last_acc_noise_;
  }

  const AccMatrices& acc_matrices() const { return acc_mat_; }
  const GyrMatrices& gyr_matrices() const { return gyr_mat_; }
  const MountingSample& mounting() const { return mounting_; }
  const MountingSpec& mounting_spec() const { return mount_spec_; }
  const SingleAxisState& acc_axis_state(int i) const { return acc_axes_.at(i); }
  const SingleAxisState& gyr_axis_state(int i) const { return gyr_axes_.at(i); }
  Vec3 acc_bias_offsets() const {
    return {acc_axes_[0].offset, acc_axes_[1].offset, acc_axes_[2].offset};
  }
  Vec3 gyr_bias_offsets() const {
    return {gyr_axes_[0].offset, gyr_axes_[1].offset, gyr_axes_[2].offset};
  }
  const Vec3& last_acc_noise() const { return last_acc_noise_; }
  const Vec3& last_gyr_noise() const { return last_gyr_noise_; }

 private:
  TriadSpec acc_spec_;
  TriadSpec gyr_spec_;
  MountingSpec mount_spec_;
  AccMatrices acc_mat_;
  GyrMatrices gyr_mat_;
  MountingSample mounting_;
  GaussianStream acc_run_;
  GaussianStream gyr_run_;
  std::array<SingleAxisState, 3> gyr_axes_{};
  std::array<SingleAxisState, 3> acc_axes_{};
  Vec3 prev_rate_meas_ = Vec3::Zero();
  Vec3 last_rate_meas_ = Vec3::Zero();
  Vec3 last_force_meas_ = Vec3::Zero();
  Vec3 last_acc_noise_ = Vec3::Zero();
  Vec3 last_gyr_noise_ = Vec3::Zero();
  std::uint64_t gyr_steps_ = 0;
  std::uint64_t acc_steps_ = 0;
};

}  // namespace sensim
