// Writes a synthetic truth trajectory (gentle weaving climb at constant
// airspeed) in the column layout load_truth expects. The angular
// acceleration columns are left out on purpose: the loader reconstructs
// them by central differencing.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sensim/geodesy.hpp"
#include "sensim/truth.hpp"
#include "sensim/units.hpp"

namespace {

std::vector<sensim::TruthRecord> build_trajectory(double duration, double dt) {
  using sensim::Vec3;
  const double speed = 29.0;          // m/s
  const double gravity = 9.80665;     // m/s^2
  const double climb_rate = 0.5;      // m/s
  const double weave_rate = 0.06;     // rad/s peak yaw rate
  const double weave_period = 40.0;   // s

  const auto n = static_cast<std::size_t>(std::floor(duration / dt)) + 1;
  std::vector<sensim::TruthRecord> records(n);

  sensim::Geodetic position{sensim::units::deg_to_rad(-3.7), sensim::units::deg_to_rad(40.4),
                            900.0};
  double heading = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * dt;
    const double yaw_rate = weave_rate * std::sin(2.0 * std::numbers::pi * t / weave_period);
    const double pitch = std::atan2(climb_rate, speed);

    sensim::TruthRecord& r = records[k];
    r.t = t;
    r.attitude = Eigen::Quaterniond(Eigen::AngleAxisd(heading, Vec3::UnitZ()) *
                                    Eigen::AngleAxisd(pitch, Vec3::UnitY()));
    const Eigen::Matrix3d r_nb = r.attitude.toRotationMatrix();

    r.velocity_ned = Vec3(speed * std::cos(heading), speed * std::sin(heading), -climb_rate);
    const Vec3 acceleration_ned(-speed * yaw_rate * std::sin(heading),
                                speed * yaw_rate * std::cos(heading), 0.0);
    r.specific_force = r_nb.transpose() * (acceleration_ned - Vec3(0.0, 0.0, gravity));
    r.angular_rate = r_nb.transpose() * Vec3(0.0, 0.0, yaw_rate);

    r.position = position;
    r.magnetic_field_ned = Vec3(25500.0, -200.0, 36400.0);
    r.pressure = 101325.0 * std::exp(-position.altitude / 8434.0);
    r.temperature = 288.15 - 0.0065 * position.altitude;
    r.airspeed = speed;
    r.angle_of_attack = 0.04;
    r.angle_of_sideslip = 0.0;
    r.mass = 19.8 - 2.5e-4 * t;  // slow fuel burn

    position = sensim::geodetic_offset(position, r.velocity_ned * dt);
    heading += yaw_rate * dt;
  }
  return records;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generate a synthetic truth trajectory CSV"};
  std::string out_path = "truth.csv";
  double duration = 60.0;
  double dt = 0.002;
  app.add_option("--out", out_path, "output CSV path");
  app.add_option("--duration", duration, "trajectory span [s]")->check(CLI::PositiveNumber);
  app.add_option("--dt", dt, "truth sample period [s]")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  const auto records = build_trajectory(duration, dt);
  sensim::save_truth(out_path, records, false);
  std::printf("wrote %zu records (%g s at %g Hz) to %s\n", records.size(), duration, 1.0 / dt,
              out_path.c_str());
  return 0;
}
