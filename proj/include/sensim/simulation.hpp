#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "sensim/air_data.hpp"
#include "sensim/camera.hpp"
#include "sensim/config.hpp"
#include "sensim/errors.hpp"
#include "sensim/gnss.hpp"
#include "sensim/imu.hpp"
#include "sensim/magnetometer.hpp"
#include "sensim/random.hpp"
#include "sensim/truth.hpp"
#include "sensim/units.hpp"

namespace sensim {

/// Everything about one airframe that is fixed across its flights: triad
/// matrices, platform and camera mounting, magnetometer response and hard
/// iron. A pure function of the aircraft seed (through the fixed sensor
/// seeds) and the specs.
struct AircraftModel {
  AccMatrices acc;
  GyrMatrices gyr;
  MountingSample platform;
  MagModel mag;
  MountingSample camera;
};

inline AircraftModel sample_aircraft_model(const RunConfig& config, const SensorSeedSet& seeds) {
  AircraftModel model;
  {
    GaussianStream fixed(seeds.fixed.acc);
    model.acc = sample_acc_matrices(config.acc_spec(), fixed);
  }
  {
    GaussianStream fixed(seeds.fixed.gyr);
    model.gyr = sample_gyr_matrices(config.gyr_spec(), fixed);
  }
  {
    GaussianStream fixed(seeds.fixed.plat);
    model.platform = sample_mounting(config.platform, fixed);
  }
  {
    GaussianStream fixed(seeds.fixed.mag);
    model.mag = sample_mag_fixed(config.mag_spec(), fixed);
  }
  {
    GaussianStream fixed(seeds.fixed.cam);
    model.camera = sample_mounting(config.camera_mount, fixed);
  }
  return model;
}

struct SimulationOutput {
  std::filesystem::path sensed_file;
  std::filesystem::path gnss_file;
  std::filesystem::path camera_file;
  AircraftModel aircraft;
  std::size_t sensed_rows = 0;
  std::size_t gnss_rows = 0;
  std::size_t camera_rows = 0;
};

namespace detail {

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::string& header) : out_(path) {
    if (!out_) throw DataError("cannot open output file: " + path.string());
    out_ << header << '\n';
  }

  void row(std::initializer_list<double> values) {
    line_.clear();
    for (double v : values) {
      if (!line_.empty()) line_ += ',';
      append_formatted(line_, v);
    }
    out_ << line_ << '\n';
  }

 private:
  std::ofstream out_;
  std::string line_;
};

}  // namespace detail

/// Turns a truth trajectory into the sensed trajectory for one flight:
/// sensed.csv at the sensed rate (IMU, magnetometer, air data), gnss.csv at
/// the GNSS rate, camera_pose.csv at the image rate. Deterministic in
/// (config, truth): running twice produces byte-identical files.
inline SimulationOutput run_simulation(const RunConfig& config,
                                       const std::vector<TruthRecord>& truth,
                                       const std::filesystem::path& out_dir) {
  config.validate();
  if (truth.size() < 2) throw DataError("truth trajectory needs at least two records");

  const double file_dt = truth[1].t - truth[0].t;
  if (std::abs(file_dt - config.rates.dt_truth) > 1.0e-9 * config.rates.dt_truth) {
    throw ConfigError("truth sample period does not match rates.dt_truth_s");
  }

  const auto sensed_stride =
      static_cast<std::size_t>(std::llround(config.rates.dt_sensed / config.rates.dt_truth));
  const auto gnss_every =
      static_cast<std::size_t>(std::llround(config.rates.dt_gnss / config.rates.dt_sensed));
  const std::size_t sensed_ticks = (truth.size() - 1) / sensed_stride;

  const auto [aircraft_seed, flight_seed] = config.seed_pair();
  const SensorSeedSet seeds = SensorSeedSet::derive(aircraft_seed, flight_seed);
  const AircraftModel model = sample_aircraft_model(config, seeds);

  ImuSensor imu(config.acc_spec(), config.gyr_spec(), config.platform, model.acc, model.gyr,
                model.platform, seeds.run.acc, seeds.run.gyr);
  Magnetometer magnetometer(config.mag_spec(), model.mag, seeds.run.mag);
  GnssReceiver gnss(config.gnss, seeds.run.gnss);
  AirDataSystem air_data(config.air_data, seeds);

  std::filesystem::create_directories(out_dir);
  SimulationOutput output;
  output.aircraft = model;
  output.sensed_file = out_dir / "sensed.csv";
  output.gnss_file = out_dir / "gnss.csv";
  output.camera_file = out_dir / "camera_pose.csv";

  detail::CsvWriter sensed(output.sensed_file,
                           "t_s,fx_mps2,fy_mps2,fz_mps2,wx_dps,wy_dps,wz_dps,"
                           "bx_nt,by_nt,bz_nt,p_pa,t_k,vtas_mps,aoa_deg,aos_deg");
  detail::CsvWriter gnss_out(output.gnss_file, "t_s,lon_deg,lat_deg,h_m,vn_mps,ve_mps,vd_mps");
  detail::CsvWriter camera_out(output.camera_file,
                               "t_s,lon_deg,lat_deg,h_m,qw,qx,qy,qz,"
                               "lon_est_deg,lat_est_deg,h_est_m,qw_est,qx_est,qy_est,qz_est");

  for (std::size_t s = 1; s <= sensed_ticks; ++s) {
    const TruthRecord& r = truth[s * sensed_stride];

    const Vec3 rate = imu.measure_angular_rate(r.angular_rate);
    const Vec3 force =
        imu.measure_specific_force(r.specific_force, r.angular_rate, r.angular_acceleration, r.mass);
    const Mat3 r_bn = r.attitude.toRotationMatrix().transpose();
    const Vec3 field = magnetometer.measure(r.magnetic_field_ned, r_bn);
    const double pressure = air_data.measure_pressure(r.pressure);
    const double temperature = air_data.measure_temperature(r.temperature);
    const double airspeed = air_data.measure_airspeed(r.airspeed);
    const double aoa = air_data.measure_angle_of_attack(r.angle_of_attack);
    const double aos = air_data.measure_angle_of_sideslip(r.angle_of_sideslip);

    sensed.row({r.t, force.x(), force.y(), force.z(),
                units::rad_to_deg(rate.x()), units::rad_to_deg(rate.y()),
                units::rad_to_deg(rate.z()),
                field.x(), field.y(), field.z(),
                pressure, temperature, airspeed,
                units::rad_to_deg(aoa), units::rad_to_deg(aos)});
    ++output.sensed_rows;

    if (s % gnss_every == 0) {
      const Geodetic position = gnss.measure_position(r.position);
      const Vec3 velocity = gnss.measure_velocity(r.velocity_ned);
      gnss_out.row({r.t, units::rad_to_deg(position.longitude),
                    units::rad_to_deg(position.latitude), position.altitude,
                    velocity.x(), velocity.y(), velocity.z()});
      ++output.gnss_rows;
    }
  }

  for (const CameraPoseSample& pose :
       camera_pose_stream(truth, config.camera_mount, model.camera, config.rates.dt_img)) {
    camera_out.row({pose.t, units::rad_to_deg(pose.position.longitude),
                    units::rad_to_deg(pose.position.latitude), pose.position.altitude,
                    pose.attitude.w(), pose.attitude.x(), pose.attitude.y(), pose.attitude.z(),
                    units::rad_to_deg(pose.position_est.longitude),
                    units::rad_to_deg(pose.position_est.latitude), pose.position_est.altitude,
                    pose.attitude_est.w(), pose.attitude_est.x(), pose.attitude_est.y(),
                    pose.attitude_est.z()});
    ++output.camera_rows;
  }

  return output;
}

}  // namespace sensim
