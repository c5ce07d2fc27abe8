#include "sensim/gnss.hpp"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "sensim/geodesy.hpp"

namespace {

using sensim::advance_ion_node;
using sensim::GaussianStream;
using sensim::Geodetic;
using sensim::GnssReceiver;
using sensim::GnssSpec;
using sensim::init_ionosphere;
using sensim::IonosphericState;
using sensim::sigma_from_cep;
using sensim::sigma_from_median_error;
using sensim::Vec3;

GnssSpec zero_spec() {
  GnssSpec spec;
  spec.sigma_position_horizontal = 0.0;
  spec.sigma_position_vertical = 0.0;
  spec.sigma_ionosphere = 0.0;
  spec.ionosphere_offset_sigma = 0.0;
  spec.sigma_velocity = 0.0;
  return spec;
}

const Geodetic kBase{0.5, 0.7, 1200.0};

TEST(Geodesy, NedOffsetsFollowCurvatureRadii) {
  // Endpoint identities of the ellipsoid radii.
  EXPECT_NEAR(sensim::wgs84::normal_radius(0.0), sensim::wgs84::semi_major_axis, 1e-6);
  EXPECT_NEAR(sensim::wgs84::meridian_radius(0.0),
              sensim::wgs84::semi_major_axis * (1.0 - sensim::wgs84::eccentricity_sq), 1e-6);
  const double polar = sensim::wgs84::semi_major_axis /
                       std::sqrt(1.0 - sensim::wgs84::eccentricity_sq);
  EXPECT_NEAR(sensim::wgs84::normal_radius(std::numbers::pi / 2.0), polar, 1e-5);
  EXPECT_NEAR(sensim::wgs84::meridian_radius(std::numbers::pi / 2.0), polar, 1e-5);

  const Geodetic north = sensim::geodetic_offset(kBase, {100.0, 0.0, 0.0});
  EXPECT_NEAR(north.latitude - kBase.latitude,
              100.0 / (sensim::wgs84::meridian_radius(kBase.latitude) + kBase.altitude), 1e-15);
  EXPECT_EQ(north.longitude, kBase.longitude);
  EXPECT_EQ(north.altitude, kBase.altitude);

  const Geodetic east = sensim::geodetic_offset(kBase, {0.0, 100.0, 0.0});
  EXPECT_NEAR(east.longitude - kBase.longitude,
              100.0 / ((sensim::wgs84::normal_radius(kBase.latitude) + kBase.altitude) *
                       std::cos(kBase.latitude)),
              1e-15);

  const Geodetic down = sensim::geodetic_offset(kBase, {0.0, 0.0, 10.0});
  EXPECT_NEAR(down.altitude, kBase.altitude - 10.0, 1e-12);
}

TEST(GnssReceiver, ZeroSpecIsPassthrough) {
  GnssReceiver receiver(zero_spec(), 1);
  for (int i = 0; i < 100; ++i) {
    const Geodetic pos = receiver.measure_position(kBase);
    EXPECT_EQ(pos.longitude, kBase.longitude);
    EXPECT_EQ(pos.latitude, kBase.latitude);
    EXPECT_EQ(pos.altitude, kBase.altitude);
    const Vec3 vel = receiver.measure_velocity(Vec3(30.0, 1.0, -0.5));
    EXPECT_EQ(vel, Vec3(30.0, 1.0, -0.5));
  }
}

TEST(GnssReceiver, IonosphericInterpolationHitsNodesExactly) {
  GnssSpec spec = zero_spec();
  spec.sigma_ionosphere = 0.16;
  spec.ionosphere_offset_sigma = 8.0;
  GnssReceiver receiver(spec, 2);

  std::vector<Vec3> errors;
  errors.reserve(180);
  Vec3 node1_before{};
  for (int g = 1; g <= 180; ++g) {
    receiver.measure_position(kBase);
    if (g == 59) node1_before = receiver.ionosphere().node_next;
    errors.push_back(receiver.last_position_error_ned());
  }

  // At g = 60 the error equals node e(1) exactly and a new window opened.
  EXPECT_EQ(errors[59], node1_before);
  EXPECT_EQ(receiver.ionosphere().window, 3u);

  // Piecewise linear: vanishing second differences inside each window.
  for (int g = 1; g + 1 < 180; ++g) {
    const bool crosses_node = (g % 60 == 0) || ((g + 1) % 60 == 0);
    if (crosses_node) continue;
    const Vec3 second_difference = errors[g + 1] - 2.0 * errors[g] + errors[g - 1];
    EXPECT_LT(second_difference.norm(), 1e-12);
  }
}

TEST(GnssReceiver, TableValuesFromDatasheetFigures) {
  EXPECT_NEAR(sigma_from_cep(2.5) / 2.12, 1.0, 5e-3);
  EXPECT_NEAR(sigma_from_median_error(0.05) / 7.41e-2, 1.0, 5e-3);
}

TEST(GnssReceiver, VelocityNoiseMoments) {
  GnssSpec spec = zero_spec();
  spec.sigma_velocity = 7.41e-2;
  GnssReceiver receiver(spec, 3);
  const Vec3 truth(25.0, -3.0, 0.2);
  double sum = 0.0;
  double sum_sq = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double e = (receiver.measure_velocity(truth) - truth).x();
    sum += e;
    sum_sq += e * e;
  }
  const double mean = sum / n;
  EXPECT_NEAR(std::sqrt(sum_sq / n), spec.sigma_velocity, 0.03 * spec.sigma_velocity);
  EXPECT_LT(std::abs(mean), 3.0 * spec.sigma_velocity / std::sqrt(static_cast<double>(n)));
}

TEST(IonosphericNodes, RandomWalkVariance) {
  GnssSpec spec;
  spec.sigma_ionosphere = 0.16;
  spec.ionosphere_offset_sigma = 8.0;

  const int flights = 4000;
  const int advances = 5;
  double sum_sq_initial = 0.0;
  double sum_sq_final = 0.0;
  for (int f = 0; f < flights; ++f) {
    GaussianStream stream(9000 + f);
    IonosphericState ion = init_ionosphere(spec, stream);
    sum_sq_initial += ion.node_current.x() * ion.node_current.x();
    for (int i = 1; i < advances; ++i) advance_ion_node(spec, ion, stream);
    // node_next is e(advances) after advances-1 explicit advances.
    sum_sq_final += ion.node_next.x() * ion.node_next.x();
  }
  const double var0 = spec.ionosphere_offset_sigma * spec.ionosphere_offset_sigma;
  const double var_n = var0 + advances * spec.sigma_ionosphere * spec.sigma_ionosphere;
  EXPECT_NEAR(sum_sq_initial / flights, var0, 0.05 * var0);
  EXPECT_NEAR(sum_sq_final / flights, var_n, 0.05 * var_n);
}

TEST(GnssReceiver, PositionNoiseAnisotropy) {
  GnssSpec spec = zero_spec();
  spec.sigma_position_horizontal = 2.12;
  spec.sigma_position_vertical = 4.25;
  GnssReceiver receiver(spec, 4);
  double sum_sq_n = 0.0;
  double sum_sq_d = 0.0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    receiver.measure_position(kBase);
    const Vec3 e = receiver.last_position_error_ned();
    sum_sq_n += e.x() * e.x();
    sum_sq_d += e.z() * e.z();
  }
  EXPECT_NEAR(std::sqrt(sum_sq_n / n), 2.12, 0.03 * 2.12);
  EXPECT_NEAR(std::sqrt(sum_sq_d / n), 4.25, 0.03 * 4.25);
}

TEST(GnssReceiver, DeterministicReplay) {
  GnssSpec spec;  // default full-noise spec
  GnssReceiver a(spec, 5);
  GnssReceiver b(spec, 5);
  for (int i = 0; i < 200; ++i) {
    const Geodetic pa = a.measure_position(kBase);
    const Geodetic pb = b.measure_position(kBase);
    EXPECT_EQ(pa.longitude, pb.longitude);
    EXPECT_EQ(pa.latitude, pb.latitude);
    EXPECT_EQ(pa.altitude, pb.altitude);
    EXPECT_EQ(a.measure_velocity(Vec3::Zero()), b.measure_velocity(Vec3::Zero()));
  }
}

TEST(GnssSpec, Validation) {
  GnssSpec spec;
  spec.ion_node_ratio = 0;
  EXPECT_THROW(spec.validate(), std::invalid_argument);
  spec.ion_node_ratio = 60;
  spec.sigma_velocity = -1.0;
  EXPECT_THROW(spec.validate(), std::invalid_argument);
}

}  // namespace
