#include "sensim/imu.hpp"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "sensim/units.hpp"

namespace {

using sensim::AccMatrices;
using sensim::GaussianStream;
using sensim::GyrMatrices;
using sensim::ImuSensor;
using sensim::Mat3;
using sensim::mounting_displacement;
using sensim::MountingSample;
using sensim::MountingSpec;
using sensim::sample_acc_matrices;
using sensim::sample_gyr_matrices;
using sensim::sample_mounting;
using sensim::SensorSeedSet;
using sensim::SingleAxisSpec;
using sensim::TriadKind;
using sensim::TriadSpec;
using sensim::Vec3;

TriadSpec zero_triad(TriadKind kind) {
  TriadSpec spec;
  spec.kind = kind;
  spec.axis.dt = 0.01;
  return spec;
}

// Baseline post-calibration parameters, gyroscope converted to rad.
TriadSpec baseline_acc() {
  TriadSpec spec = zero_triad(TriadKind::accelerometer);
  spec.axis.bias_offset = 1.57e-1;
  spec.axis.bias_drift = 6.86e-5;
  spec.axis.white_noise = 4.83e-4;
  spec.scale_factor_sigma = 5.00e-5;
  spec.cross_coupling_sigma = 3.05e-5;
  return spec;
}

TriadSpec baseline_gyr() {
  TriadSpec spec = zero_triad(TriadKind::gyroscope);
  spec.axis.bias_offset = sensim::units::deg_to_rad(2.00e-1);
  spec.axis.bias_drift = sensim::units::deg_to_rad(1.42e-4);
  spec.axis.white_noise = sensim::units::deg_to_rad(4.30e-3);
  spec.scale_factor_sigma = 1.50e-5;
  spec.cross_coupling_sigma = 4.35e-5;
  return spec;
}

TEST(AccMatrixSampling, ZeroSpecGivesIdentity) {
  GaussianStream stream(1);
  const AccMatrices m = sample_acc_matrices(zero_triad(TriadKind::accelerometer), stream);
  EXPECT_TRUE(m.scale_cross.isIdentity(0.0));
  EXPECT_TRUE(m.error_transform.isIdentity(0.0));
  EXPECT_EQ(stream.draws_emitted(), 6u);
}

TEST(AccMatrixSampling, StructureAndSharedDraws) {
  TriadSpec spec = baseline_acc();
  GaussianStream stream(2);
  for (int i = 0; i < 100; ++i) {
    const AccMatrices m = sample_acc_matrices(spec, stream);
    // Strictly-upper entries are exactly zero in both matrices.
    for (int r = 0; r < 3; ++r) {
      for (int c = r + 1; c < 3; ++c) {
        EXPECT_EQ(m.scale_cross(r, c), 0.0);
        EXPECT_EQ(m.error_transform(r, c), 0.0);
      }
    }
    // Diagonals near one and shared between the two matrices.
    for (int d = 0; d < 3; ++d) {
      EXPECT_NEAR(m.scale_cross(d, d), 1.0, 1e-3);
      EXPECT_EQ(m.scale_cross(d, d), m.error_transform(d, d));
    }
    // Off-diagonals of the error transform reuse the same misalignment
    // draws, scaled by the shared scale factors.
    EXPECT_DOUBLE_EQ(m.error_transform(1, 0), m.scale_cross(1, 0) * m.scale_cross(0, 0));
    EXPECT_DOUBLE_EQ(m.error_transform(2, 0), -m.scale_cross(2, 0) * m.scale_cross(0, 0));
    EXPECT_DOUBLE_EQ(m.error_transform(2, 1), m.scale_cross(2, 1) * m.scale_cross(1, 1));
    // Calibrated baseline keeps cross couplings at the 3e-5 scale.
    EXPECT_LT(std::abs(m.scale_cross(1, 0)), 5.0 * spec.cross_coupling_sigma);
  }
}

TEST(AccMatrixSampling, MomentCheck) {
  const TriadSpec spec = baseline_acc();
  GaussianStream stream(3);
  double sum_sq_cross = 0.0;
  double sum_sq_scale = 0.0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const AccMatrices m = sample_acc_matrices(spec, stream);
    sum_sq_cross += m.scale_cross(2, 1) * m.scale_cross(2, 1);
    const double ds = m.scale_cross(1, 1) - 1.0;
    sum_sq_scale += ds * ds;
  }
  EXPECT_NEAR(std::sqrt(sum_sq_cross / n), spec.cross_coupling_sigma,
              0.05 * spec.cross_coupling_sigma);
  EXPECT_NEAR(std::sqrt(sum_sq_scale / n), spec.scale_factor_sigma,
              0.05 * spec.scale_factor_sigma);
}

TEST(AccMatrixSampling, KindIsChecked) {
  GaussianStream stream(4);
  EXPECT_THROW(sample_acc_matrices(zero_triad(TriadKind::gyroscope), stream),
               std::invalid_argument);
  EXPECT_THROW(sample_gyr_matrices(zero_triad(TriadKind::accelerometer), stream),
               std::invalid_argument);
}

TEST(GyrMatrixSampling, ZeroSpecGivesIdentityAndBaselineMoments) {
  GaussianStream stream(5);
  const GyrMatrices identity = sample_gyr_matrices(zero_triad(TriadKind::gyroscope), stream);
  EXPECT_TRUE(identity.scale_cross.isIdentity(0.0));
  EXPECT_EQ(stream.draws_emitted(), 9u);

  const TriadSpec spec = baseline_gyr();
  double sum_sq_cross = 0.0;
  double sum_sq_scale = 0.0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const GyrMatrices m = sample_gyr_matrices(spec, stream);
    sum_sq_cross += m.scale_cross(0, 1) * m.scale_cross(0, 1);
    const double ds = m.scale_cross(2, 2) - 1.0;
    sum_sq_scale += ds * ds;
  }
  EXPECT_NEAR(std::sqrt(sum_sq_cross / n), spec.cross_coupling_sigma,
              0.05 * spec.cross_coupling_sigma);
  EXPECT_NEAR(std::sqrt(sum_sq_scale / n), spec.scale_factor_sigma,
              0.05 * spec.scale_factor_sigma);
}

TEST(Mounting, DisplacementInterpolatesWithMass) {
  MountingSpec mount;
  mount.lever_arm_full = Vec3(1.0, 0.0, -0.2);
  mount.lever_arm_empty = Vec3(0.6, 0.1, -0.2);
  mount.mass_full = 20.0;
  mount.mass_empty = 14.0;

  EXPECT_TRUE(mounting_displacement(mount, 20.0).isApprox(mount.lever_arm_full, 0.0));
  EXPECT_TRUE(mounting_displacement(mount, 14.0).isApprox(mount.lever_arm_empty, 0.0));
  EXPECT_TRUE(mounting_displacement(mount, 17.0)
                  .isApprox(0.5 * (mount.lever_arm_full + mount.lever_arm_empty), 1e-15));
  // Out-of-range masses clamp to the nearest configuration.
  EXPECT_TRUE(mounting_displacement(mount, 25.0).isApprox(mount.lever_arm_full, 0.0));
  EXPECT_TRUE(mounting_displacement(mount, 1.0).isApprox(mount.lever_arm_empty, 0.0));
}

TEST(Mounting, ZeroSigmasGiveExactPose) {
  MountingSpec mount;
  GaussianStream stream(6);
  const MountingSample sample = sample_mounting(mount, stream);
  EXPECT_EQ(sample.attitude.yaw, 0.0);
  EXPECT_EQ(sample.attitude.pitch, 0.0);
  EXPECT_EQ(sample.attitude.roll, 0.0);
  EXPECT_TRUE(sample.position_est_offset.isZero(0.0));
  EXPECT_EQ(sample.attitude_est.yaw, 0.0);
  EXPECT_TRUE(sample.r_bp.isIdentity(0.0));
  EXPECT_TRUE(sample.r_bp_est.isIdentity(0.0));
  EXPECT_EQ(stream.draws_emitted(), 9u);
}

TEST(Mounting, EstimateErrorSpreadMatchesSigma) {
  MountingSpec mount;
  mount.sigma_yaw = sensim::units::deg_to_rad(0.5);
  mount.sigma_pitch = sensim::units::deg_to_rad(2.0);
  mount.sigma_roll = sensim::units::deg_to_rad(0.1);
  mount.sigma_position_est = 0.01;
  mount.sigma_attitude_est = sensim::units::deg_to_rad(0.03);

  GaussianStream stream(7);
  double sum_sq_yaw = 0.0;
  double sum_sq_est = 0.0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const MountingSample sample = sample_mounting(mount, stream);
    sum_sq_yaw += sample.attitude.yaw * sample.attitude.yaw;
    const double d = sample.attitude_est.pitch - sample.attitude.pitch;
    sum_sq_est += d * d;
  }
  EXPECT_NEAR(std::sqrt(sum_sq_yaw / n), mount.sigma_yaw, 0.05 * mount.sigma_yaw);
  EXPECT_NEAR(std::sqrt(sum_sq_est / n), mount.sigma_attitude_est,
              0.05 * mount.sigma_attitude_est);
}

TEST(ImuSensor, ExactPassthroughWithZeroErrors) {
  const TriadSpec acc = zero_triad(TriadKind::accelerometer);
  const TriadSpec gyr = zero_triad(TriadKind::gyroscope);
  MountingSpec mount;
  mount.sigma_yaw = sensim::units::deg_to_rad(0.5);
  mount.sigma_pitch = sensim::units::deg_to_rad(2.0);
  GaussianStream stream(8);
  MountingSample sample = sample_mounting(mount, stream);  // attitude real, estimate exact
  ImuSensor imu(acc, gyr, mount, AccMatrices{}, GyrMatrices{}, sample, 100, 101);

  const Vec3 w(0.02, -0.3, 0.15);
  const Vec3 f(0.4, 0.1, -9.7);
  for (int i = 0; i < 50; ++i) {
    const Vec3 w_meas = imu.measure_angular_rate(w);
    const Vec3 f_meas = imu.measure_specific_force(f, w, Vec3::Zero(), 0.0);
    EXPECT_LT((w_meas - w).norm(), 1e-15);
    EXPECT_LT((f_meas - f).norm(), 1e-14);
    EXPECT_LT(imu.gyr_full_error(w).norm(), 1e-15);
    EXPECT_LT(imu.acc_full_error(f).norm(), 1e-14);
  }
}

TEST(ImuSensor, RotationSandwichEqualsMatrixAtZeroMounting) {
  TriadSpec gyr = zero_triad(TriadKind::gyroscope);
  GyrMatrices matrices;
  matrices.scale_cross = Mat3::Identity() * 1.5;
  ImuSensor imu(zero_triad(TriadKind::accelerometer), gyr, MountingSpec{}, AccMatrices{},
                matrices, MountingSample{}, 110, 111);
  const Vec3 w(0.1, 0.2, 0.3);
  EXPECT_TRUE(imu.measure_angular_rate(w).isApprox(1.5 * w, 1e-15));
}

TEST(ImuSensor, LeverArmTermsCancelWithExactEstimates) {
  MountingSpec mount;
  mount.lever_arm_full = Vec3(1.0, 0.0, 0.0);
  ImuSensor imu(zero_triad(TriadKind::accelerometer), zero_triad(TriadKind::gyroscope), mount,
                AccMatrices{}, GyrMatrices{}, MountingSample{}, 120, 121);

  const Vec3 w(0.0, 0.0, 1.0);
  const Vec3 f(0.2, -0.4, 9.8);
  for (int i = 0; i < 10; ++i) {
    imu.measure_angular_rate(w);
    const Vec3 f_meas = imu.measure_specific_force(f, w, Vec3::Zero(), 0.0);
    EXPECT_LT((f_meas - f).norm(), 1e-13);
  }
}

TEST(ImuSensor, LeverArmErrorScalesLinearly) {
  const Vec3 w(0.0, 0.0, 1.0);
  const Vec3 f(0.0, 0.0, 0.0);
  const auto error_for_offset = [&](const Vec3& offset) {
    MountingSpec mount;
    mount.lever_arm_full = Vec3(1.0, 0.0, 0.0);
    MountingSample sample;
    sample.position_est_offset = offset;
    ImuSensor imu(zero_triad(TriadKind::accelerometer), zero_triad(TriadKind::gyroscope), mount,
                  AccMatrices{}, GyrMatrices{}, sample, 130, 131);
    imu.measure_angular_rate(w);
    return (imu.measure_specific_force(f, w, Vec3::Zero(), 0.0) - f).norm();
  };

  const double base = error_for_offset(Vec3(0.01, 0.0, 0.0));
  const double doubled = error_for_offset(Vec3(0.02, 0.0, 0.0));
  EXPECT_GT(base, 0.0);
  EXPECT_NEAR(doubled, 2.0 * base, 1e-12);
}

TEST(ImuSensor, ForceBeforeRateIsRejected) {
  ImuSensor imu(zero_triad(TriadKind::accelerometer), zero_triad(TriadKind::gyroscope),
                MountingSpec{}, AccMatrices{}, GyrMatrices{}, MountingSample{}, 140, 141);
  EXPECT_THROW(imu.measure_specific_force(Vec3::Zero(), Vec3::Zero(), Vec3::Zero(), 0.0),
               std::logic_error);
  imu.measure_angular_rate(Vec3::Zero());
  EXPECT_NO_THROW(imu.measure_specific_force(Vec3::Zero(), Vec3::Zero(), Vec3::Zero(), 0.0));
}

// Per-axis error of the assembled triad against the single-axis law at a
// fixed step count, across independent flights.
TEST(ImuSensor, StaticErrorSpreadMatchesSingleAxisLaw) {
  const TriadSpec acc = baseline_acc();
  const TriadSpec gyr = baseline_gyr();
  const Vec3 gravity(0.0, 0.0, -9.80665);

  const int runs = 200;
  const int steps = 100;
  std::vector<double> acc_axis_error;
  std::vector<double> gyr_axis_error;
  acc_axis_error.reserve(runs);
  gyr_axis_error.reserve(runs);
  for (int r = 0; r < runs; ++r) {
    ImuSensor imu(acc, gyr, MountingSpec{}, AccMatrices{}, GyrMatrices{}, MountingSample{},
                  1000 + r, 5000 + r);
    Vec3 w_meas = Vec3::Zero();
    Vec3 f_meas = Vec3::Zero();
    for (int s = 0; s < steps; ++s) {
      w_meas = imu.measure_angular_rate(Vec3::Zero());
      f_meas = imu.measure_specific_force(gravity, Vec3::Zero(), Vec3::Zero(), 0.0);
    }
    acc_axis_error.push_back(f_meas.x() - gravity.x());
    gyr_axis_error.push_back(w_meas.x());
  }

  const auto sample_std = [](const std::vector<double>& xs) {
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double m2 = 0.0;
    for (double x : xs) m2 += (x - mean) * (x - mean);
    return std::sqrt(m2 / static_cast<double>(xs.size() - 1));
  };

  const double t = steps * acc.axis.dt;
  EXPECT_NEAR(sample_std(acc_axis_error), sensim::theory_error_stats(acc.axis, t).stddev(),
              0.15 * sensim::theory_error_stats(acc.axis, t).stddev());
  EXPECT_NEAR(sample_std(gyr_axis_error), sensim::theory_error_stats(gyr.axis, t).stddev(),
              0.15 * sensim::theory_error_stats(gyr.axis, t).stddev());
}

TEST(ImuSensor, FullErrorReconstructsMeasurement) {
  const TriadSpec acc = baseline_acc();
  const TriadSpec gyr = baseline_gyr();
  SensorSeedSet seeds = SensorSeedSet::derive(3, 4);
  MountingSpec mount;
  mount.sigma_yaw = 0.01;
  mount.sigma_pitch = 0.01;
  mount.sigma_roll = 0.01;
  mount.sigma_position_est = 0.01;
  mount.sigma_attitude_est = 0.001;
  mount.lever_arm_full = Vec3(0.5, 0.1, -0.1);
  ImuSensor imu(acc, gyr, mount, seeds);

  const Vec3 w(0.05, -0.02, 0.4);
  const Vec3 f(1.0, -2.0, -9.5);
  for (int i = 0; i < 20; ++i) {
    const Vec3 w_meas = imu.measure_angular_rate(w);
    const Vec3 f_meas = imu.measure_specific_force(f, w, Vec3::Zero(), 0.0);
    EXPECT_TRUE((imu.gyr_full_error(w) + imu.last_gyr_noise() + w).isApprox(w_meas, 1e-12));
    EXPECT_TRUE((imu.acc_full_error(f) + imu.last_acc_noise() + f).isApprox(f_meas, 1e-12));
  }
}

TEST(ImuSensor, FullErrorGrowsWithDriftLaw) {
  TriadSpec gyr = zero_triad(TriadKind::gyroscope);
  gyr.axis.bias_drift = 1e-3;  // drift only, so Var[E] = su^2 t

  const int runs = 200;
  const auto spread_at = [&](int steps) {
    double sum_sq = 0.0;
    for (int r = 0; r < runs; ++r) {
      ImuSensor imu(zero_triad(TriadKind::accelerometer), gyr, MountingSpec{}, AccMatrices{},
                    GyrMatrices{}, MountingSample{}, 200 + r, 900 + r);
      for (int s = 0; s < steps; ++s) imu.measure_angular_rate(Vec3::Zero());
      const double e = imu.gyr_full_error(Vec3::Zero()).x();
      sum_sq += e * e;
    }
    return std::sqrt(sum_sq / runs);
  };

  const double early = spread_at(100);
  const double late = spread_at(400);
  EXPECT_NEAR(late / early, 2.0, 0.4);
}

TEST(ImuSensor, SeededConstructionIsDeterministic) {
  const TriadSpec acc = baseline_acc();
  const TriadSpec gyr = baseline_gyr();
  const SensorSeedSet seeds = SensorSeedSet::derive(10, 20);
  ImuSensor a(acc, gyr, MountingSpec{}, seeds);
  ImuSensor b(acc, gyr, MountingSpec{}, seeds);
  const Vec3 w(0.1, 0.0, -0.2);
  const Vec3 f(0.0, 0.3, -9.8);
  for (int i = 0; i < 10; ++i) {
    EXPECT_EQ(a.measure_angular_rate(w), b.measure_angular_rate(w));
    EXPECT_EQ(a.measure_specific_force(f, w, Vec3::Zero(), 0.0),
              b.measure_specific_force(f, w, Vec3::Zero(), 0.0));
  }
  EXPECT_EQ(a.acc_matrices().scale_cross, b.acc_matrices().scale_cross);
  EXPECT_EQ(a.gyr_bias_offsets(), b.gyr_bias_offsets());
}

}  // namespace
