#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <utility>

#include <json.hpp>

#include "sensim/air_data.hpp"
#include "sensim/calibration.hpp"
#include "sensim/camera.hpp"
#include "sensim/errors.hpp"
#include "sensim/gnss.hpp"
#include "sensim/imu.hpp"
#include "sensim/magnetometer.hpp"
#include "sensim/random.hpp"
#include "sensim/units.hpp"

namespace sensim {

struct RatesConfig {
  double dt_truth = 0.002;  // s
  double dt_sensed = 0.01;  // s
  double dt_img = 0.1;      // s
  double dt_gnss = 1.0;     // s
};

/// Either a catalog lookup (master seed + indices) or an explicit seed pair.
struct SeedsConfig {
  std::uint64_t master_seed = 1;
  std::size_t capacity = 64;
  std::size_t aircraft = 0;
  std::size_t flight = 0;
  bool has_explicit_pair = false;
  std::uint64_t aircraft_seed = 0;
  std::uint64_t flight_seed = 0;
};

/// Full description of one simulation run. Sensor sections hold the raw
/// (pre-calibration) parameters; the *_spec() accessors apply the configured
/// calibration and swinging reductions and stamp in the sensed-rate dt.
struct RunConfig {
  SeedsConfig seeds;
  RatesConfig rates;
  TriadSpec accelerometer_raw;
  TriadSpec gyroscope_raw;
  MountingSpec platform;
  MagSpec magnetometer_raw;
  GnssSpec gnss;
  AirDataSpec air_data;
  CameraIntrinsics camera;
  MountingSpec camera_mount;
  double inertial_reduction = 0.95;
  double magnetic_reduction = 0.90;

  TriadSpec acc_spec() const {
    TriadSpec spec = derate_spec(accelerometer_raw, inertial_reduction);
    spec.axis.dt = rates.dt_sensed;
    return spec;
  }
  TriadSpec gyr_spec() const {
    TriadSpec spec = derate_spec(gyroscope_raw, inertial_reduction);
    spec.axis.dt = rates.dt_sensed;
    return spec;
  }
  MagSpec mag_spec() const {
    MagSpec spec = derate_spec(magnetometer_raw, magnetic_reduction);
    spec.dt = rates.dt_sensed;
    return spec;
  }

  std::pair<std::uint64_t, std::uint64_t> seed_pair() const {
    if (seeds.has_explicit_pair) return {seeds.aircraft_seed, seeds.flight_seed};
    if (seeds.aircraft >= seeds.capacity || seeds.flight >= seeds.capacity) {
      throw ConfigError("aircraft/flight index outside the seed catalog capacity");
    }
    const SeedCatalog catalog = SeedCatalog::build(seeds.master_seed, seeds.capacity);
    return {catalog.aircraft_seeds[seeds.aircraft], catalog.flight_seeds[seeds.flight]};
  }

  void validate() const {
    const auto positive = [](double v, const char* what) {
      if (!(v > 0.0)) throw ConfigError(std::string(what) + " must be positive");
    };
    positive(rates.dt_truth, "dt_truth_s");
    positive(rates.dt_sensed, "dt_sensed_s");
    positive(rates.dt_img, "dt_img_s");
    positive(rates.dt_gnss, "dt_gnss_s");

    const auto integral_ratio = [](double num, double den, const char* what) {
      const double ratio = num / den;
      if (std::abs(ratio - std::round(ratio)) > 1.0e-9 || ratio < 1.0 - 1.0e-9) {
        throw ConfigError(std::string(what) + " must be an integer multiple");
      }
    };
    integral_ratio(rates.dt_sensed, rates.dt_truth, "dt_sensed_s / dt_truth_s");
    integral_ratio(rates.dt_img, rates.dt_sensed, "dt_img_s / dt_sensed_s");
    integral_ratio(rates.dt_gnss, rates.dt_sensed, "dt_gnss_s / dt_sensed_s");

    if (!(inertial_reduction >= 0.0 && inertial_reduction <= 1.0) ||
        !(magnetic_reduction >= 0.0 && magnetic_reduction <= 1.0)) {
      throw ConfigError("calibration reductions must lie in [0, 1]");
    }
    if (!seeds.has_explicit_pair && seeds.capacity == 0) {
      throw ConfigError("seed catalog capacity must be at least 1");
    }

    try {
      acc_spec().validate();
      gyr_spec().validate();
      mag_spec().validate();
      platform.validate();
      camera_mount.validate();
      gnss.validate();
      air_data.validate();
      camera.validate();
    } catch (const std::invalid_argument& err) {
      throw ConfigError(err.what());
    }
  }

  static RunConfig from_json(const nlohmann::json& root);
  static RunConfig from_json_file(const std::filesystem::path& path);
};

namespace config_detail {

using nlohmann::json;

inline void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                                const std::string& section) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) known = known || item.key() == key;
    if (!known) throw ConfigError("unknown key '" + item.key() + "' in " + section);
  }
}

inline const json* find(const json& obj, const char* key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

inline double number(const json& obj, const char* key, double fallback,
                     const std::string& section) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_number()) throw ConfigError(section + "." + key + " must be a number");
  return v->get<double>();
}

inline double required_number(const json& obj, const char* key, const std::string& section) {
  const json* v = find(obj, key);
  if (!v) throw ConfigError("missing required key " + section + "." + key);
  if (!v->is_number()) throw ConfigError(section + "." + key + " must be a number");
  return v->get<double>();
}

inline std::uint64_t unsigned_number(const json& obj, const char* key, std::uint64_t fallback,
                                     const std::string& section) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (v->is_number_unsigned()) return v->get<std::uint64_t>();
  if (v->is_number_integer() && v->get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(v->get<std::int64_t>());
  }
  throw ConfigError(section + "." + key + " must be a non-negative integer");
}

inline Vec3 required_vec3(const json& obj, const char* key, const std::string& section) {
  const json* v = find(obj, key);
  if (!v) throw ConfigError("missing required key " + section + "." + key);
  if (!v->is_array() || v->size() != 3 || !(*v)[0].is_number() || !(*v)[1].is_number() ||
      !(*v)[2].is_number()) {
    throw ConfigError(section + "." + key + " must be an array of three numbers");
  }
  return {(*v)[0].get<double>(), (*v)[1].get<double>(), (*v)[2].get<double>()};
}

inline AirChannelSpec air_channel(const json& obj, const char* key, const AirChannelSpec& fallback,
                                  const std::string& section, const char* offset_key,
                                  const char* noise_key, double unit = 1.0) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  const std::string name = section + "." + key;
  if (!v->is_object()) throw ConfigError(name + " must be an object");
  reject_unknown_keys(*v, {offset_key, noise_key}, name);
  AirChannelSpec out;
  out.bias_offset_sigma = unit * number(*v, offset_key, fallback.bias_offset_sigma / unit, name);
  out.noise_sigma = unit * number(*v, noise_key, fallback.noise_sigma / unit, name);
  return out;
}

inline MountingSpec mounting_section(const json& obj, const std::string& section,
                                     const MountingSpec& defaults, double mass_full,
                                     double mass_empty) {
  reject_unknown_keys(obj,
                      {"lever_arm_full_m", "lever_arm_empty_m", "sigma_yaw_deg",
                       "sigma_pitch_deg", "sigma_roll_deg", "sigma_position_est_m",
                       "sigma_attitude_est_deg"},
                      section);
  MountingSpec mount = defaults;
  mount.lever_arm_full = required_vec3(obj, "lever_arm_full_m", section);
  mount.lever_arm_empty = required_vec3(obj, "lever_arm_empty_m", section);
  mount.mass_full = mass_full;
  mount.mass_empty = mass_empty;
  mount.sigma_yaw = units::deg_to_rad(number(obj, "sigma_yaw_deg",
                                             units::rad_to_deg(defaults.sigma_yaw), section));
  mount.sigma_pitch = units::deg_to_rad(number(obj, "sigma_pitch_deg",
                                               units::rad_to_deg(defaults.sigma_pitch), section));
  mount.sigma_roll = units::deg_to_rad(number(obj, "sigma_roll_deg",
                                              units::rad_to_deg(defaults.sigma_roll), section));
  mount.sigma_position_est =
      number(obj, "sigma_position_est_m", defaults.sigma_position_est, section);
  mount.sigma_attitude_est = units::deg_to_rad(
      number(obj, "sigma_attitude_est_deg", units::rad_to_deg(defaults.sigma_attitude_est), section));
  return mount;
}

}  // namespace config_detail

/// Baseline parameter set: tactical-grade MEMS inertial sensors, a small
/// GNSS receiver and a multi-hole air data probe, with the 95% / 90%
/// calibration and swinging reductions applied by the *_spec() accessors.
inline RunConfig default_run_config() {
  RunConfig cfg;

  cfg.accelerometer_raw.kind = TriadKind::accelerometer;
  cfg.accelerometer_raw.axis.bias_offset = 1.57e-1;        // m/s^2
  cfg.accelerometer_raw.axis.bias_drift = 6.86e-5;         // m/s^2.5
  cfg.accelerometer_raw.axis.white_noise = 4.83e-4;        // m/s^1.5
  cfg.accelerometer_raw.scale_factor_sigma = 1.00e-3;
  cfg.accelerometer_raw.cross_coupling_sigma = 6.11e-4;

  cfg.gyroscope_raw.kind = TriadKind::gyroscope;
  cfg.gyroscope_raw.axis.bias_offset = units::deg_to_rad(2.00e-1);   // rad/s
  cfg.gyroscope_raw.axis.bias_drift = units::deg_to_rad(1.42e-4);    // rad/s^1.5
  cfg.gyroscope_raw.axis.white_noise = units::deg_to_rad(4.30e-3);   // rad/s^0.5
  cfg.gyroscope_raw.scale_factor_sigma = 3.00e-4;
  cfg.gyroscope_raw.cross_coupling_sigma = 8.70e-4;

  cfg.platform.sigma_yaw = units::deg_to_rad(0.5);
  cfg.platform.sigma_pitch = units::deg_to_rad(2.0);
  cfg.platform.sigma_roll = units::deg_to_rad(0.1);
  cfg.platform.sigma_position_est = 0.01;
  cfg.platform.sigma_attitude_est = units::deg_to_rad(0.03);

  cfg.magnetometer_raw.white_noise = 5.0;            // nT sqrt(s)
  cfg.magnetometer_raw.scale_factor_sigma = 7.50e-3;
  cfg.magnetometer_raw.cross_coupling_sigma = 9.16e-3;
  cfg.magnetometer_raw.hard_iron_sigma = 1.75e3;     // nT
  cfg.magnetometer_raw.bias_offset_sigma = 5.00e2;   // nT

  cfg.air_data.pressure = {100.0, 100.0};            // Pa
  cfg.air_data.temperature = {0.05, 0.05};           // K
  cfg.air_data.airspeed = {1.0 / 3.0, 1.0 / 3.0};    // m/s
  cfg.air_data.angle_of_attack = {units::deg_to_rad(1.0 / 3.0), units::deg_to_rad(1.0 / 3.0)};
  cfg.air_data.angle_of_sideslip = {units::deg_to_rad(1.0 / 3.0), units::deg_to_rad(1.0 / 3.0)};

  cfg.camera_mount.nominal_yaw = units::deg_to_rad(90.0);
  cfg.camera_mount.sigma_yaw = units::deg_to_rad(0.1);
  cfg.camera_mount.sigma_pitch = units::deg_to_rad(0.1);
  cfg.camera_mount.sigma_roll = units::deg_to_rad(0.1);
  cfg.camera_mount.sigma_position_est = 0.002;
  cfg.camera_mount.sigma_attitude_est = units::deg_to_rad(0.01);

  return cfg;
}

inline RunConfig RunConfig::from_json(const nlohmann::json& root) {
  using namespace config_detail;
  if (!root.is_object()) throw ConfigError("configuration root must be an object");
  reject_unknown_keys(root,
                      {"seeds", "rates", "mass", "accelerometer", "gyroscope", "platform",
                       "magnetometer", "gnss", "air_data", "camera", "calibration"},
                      "config");

  RunConfig cfg = default_run_config();

  if (const json* seeds = find(root, "seeds")) {
    reject_unknown_keys(*seeds,
                        {"master_seed", "capacity", "aircraft", "flight", "aircraft_seed",
                         "flight_seed"},
                        "seeds");
    const bool has_pair = find(*seeds, "aircraft_seed") || find(*seeds, "flight_seed");
    if (has_pair) {
      if (!find(*seeds, "aircraft_seed") || !find(*seeds, "flight_seed")) {
        throw ConfigError("seeds: aircraft_seed and flight_seed must be given together");
      }
      if (find(*seeds, "master_seed") || find(*seeds, "aircraft") || find(*seeds, "flight")) {
        throw ConfigError("seeds: give either an explicit pair or catalog indices, not both");
      }
      cfg.seeds.has_explicit_pair = true;
      cfg.seeds.aircraft_seed = unsigned_number(*seeds, "aircraft_seed", 0, "seeds");
      cfg.seeds.flight_seed = unsigned_number(*seeds, "flight_seed", 0, "seeds");
    } else {
      cfg.seeds.master_seed = unsigned_number(*seeds, "master_seed", cfg.seeds.master_seed, "seeds");
      cfg.seeds.capacity = static_cast<std::size_t>(
          unsigned_number(*seeds, "capacity", cfg.seeds.capacity, "seeds"));
      cfg.seeds.aircraft = static_cast<std::size_t>(
          unsigned_number(*seeds, "aircraft", cfg.seeds.aircraft, "seeds"));
      cfg.seeds.flight = static_cast<std::size_t>(
          unsigned_number(*seeds, "flight", cfg.seeds.flight, "seeds"));
    }
  }

  if (const json* rates = find(root, "rates")) {
    reject_unknown_keys(*rates, {"dt_truth_s", "dt_sensed_s", "dt_img_s", "dt_gnss_s"}, "rates");
    cfg.rates.dt_truth = number(*rates, "dt_truth_s", cfg.rates.dt_truth, "rates");
    cfg.rates.dt_sensed = number(*rates, "dt_sensed_s", cfg.rates.dt_sensed, "rates");
    cfg.rates.dt_img = number(*rates, "dt_img_s", cfg.rates.dt_img, "rates");
    cfg.rates.dt_gnss = number(*rates, "dt_gnss_s", cfg.rates.dt_gnss, "rates");
  }

  const json* mass = find(root, "mass");
  if (!mass) throw ConfigError("missing required section 'mass'");
  reject_unknown_keys(*mass, {"full_kg", "empty_kg"}, "mass");
  const double mass_full = required_number(*mass, "full_kg", "mass");
  const double mass_empty = required_number(*mass, "empty_kg", "mass");
  if (!(mass_full > mass_empty)) throw ConfigError("mass.full_kg must exceed mass.empty_kg");

  if (const json* acc = find(root, "accelerometer")) {
    reject_unknown_keys(*acc,
                        {"bias_offset_mps2", "bias_drift_mps2p5", "white_noise_mps1p5",
                         "scale_factor_sigma", "cross_coupling_sigma", "drift_clamp_factor"},
                        "accelerometer");
    auto& raw = cfg.accelerometer_raw;
    raw.axis.bias_offset = number(*acc, "bias_offset_mps2", raw.axis.bias_offset, "accelerometer");
    raw.axis.bias_drift = number(*acc, "bias_drift_mps2p5", raw.axis.bias_drift, "accelerometer");
    raw.axis.white_noise = number(*acc, "white_noise_mps1p5", raw.axis.white_noise, "accelerometer");
    raw.scale_factor_sigma = number(*acc, "scale_factor_sigma", raw.scale_factor_sigma, "accelerometer");
    raw.cross_coupling_sigma =
        number(*acc, "cross_coupling_sigma", raw.cross_coupling_sigma, "accelerometer");
    raw.axis.drift_clamp_factor =
        number(*acc, "drift_clamp_factor", raw.axis.drift_clamp_factor, "accelerometer");
  }

  if (const json* gyr = find(root, "gyroscope")) {
    reject_unknown_keys(*gyr,
                        {"bias_offset_dps", "bias_drift_dps1p5", "white_noise_dps0p5",
                         "scale_factor_sigma", "cross_coupling_sigma", "drift_clamp_factor"},
                        "gyroscope");
    auto& raw = cfg.gyroscope_raw;
    raw.axis.bias_offset = units::deg_to_rad(
        number(*gyr, "bias_offset_dps", units::rad_to_deg(raw.axis.bias_offset), "gyroscope"));
    raw.axis.bias_drift = units::deg_to_rad(
        number(*gyr, "bias_drift_dps1p5", units::rad_to_deg(raw.axis.bias_drift), "gyroscope"));
    raw.axis.white_noise = units::deg_to_rad(
        number(*gyr, "white_noise_dps0p5", units::rad_to_deg(raw.axis.white_noise), "gyroscope"));
    raw.scale_factor_sigma = number(*gyr, "scale_factor_sigma", raw.scale_factor_sigma, "gyroscope");
    raw.cross_coupling_sigma =
        number(*gyr, "cross_coupling_sigma", raw.cross_coupling_sigma, "gyroscope");
    raw.axis.drift_clamp_factor =
        number(*gyr, "drift_clamp_factor", raw.axis.drift_clamp_factor, "gyroscope");
  }

  const json* platform = find(root, "platform");
  if (!platform) throw ConfigError("missing required section 'platform'");
  cfg.platform = config_detail::mounting_section(*platform, "platform", cfg.platform,
                                                 mass_full, mass_empty);

  if (const json* mag = find(root, "magnetometer")) {
    reject_unknown_keys(*mag,
                        {"white_noise_nt_sqrt_s", "scale_factor_sigma", "cross_coupling_sigma",
                         "hard_iron_nt", "bias_offset_nt"},
                        "magnetometer");
    auto& raw = cfg.magnetometer_raw;
    raw.white_noise = number(*mag, "white_noise_nt_sqrt_s", raw.white_noise, "magnetometer");
    raw.scale_factor_sigma = number(*mag, "scale_factor_sigma", raw.scale_factor_sigma, "magnetometer");
    raw.cross_coupling_sigma =
        number(*mag, "cross_coupling_sigma", raw.cross_coupling_sigma, "magnetometer");
    raw.hard_iron_sigma = number(*mag, "hard_iron_nt", raw.hard_iron_sigma, "magnetometer");
    raw.bias_offset_sigma = number(*mag, "bias_offset_nt", raw.bias_offset_sigma, "magnetometer");
  }

  if (const json* gnss = find(root, "gnss")) {
    reject_unknown_keys(*gnss,
                        {"sigma_position_horizontal_m", "sigma_position_vertical_m",
                         "sigma_ionosphere_m", "ionosphere_offset_m", "sigma_velocity_mps",
                         "ion_node_ratio"},
                        "gnss");
    cfg.gnss.sigma_position_horizontal =
        number(*gnss, "sigma_position_horizontal_m", cfg.gnss.sigma_position_horizontal, "gnss");
    cfg.gnss.sigma_position_vertical =
        number(*gnss, "sigma_position_vertical_m", cfg.gnss.sigma_position_vertical, "gnss");
    cfg.gnss.sigma_ionosphere = number(*gnss, "sigma_ionosphere_m", cfg.gnss.sigma_ionosphere, "gnss");
    cfg.gnss.ionosphere_offset_sigma =
        number(*gnss, "ionosphere_offset_m", cfg.gnss.ionosphere_offset_sigma, "gnss");
    cfg.gnss.sigma_velocity = number(*gnss, "sigma_velocity_mps", cfg.gnss.sigma_velocity, "gnss");
    cfg.gnss.ion_node_ratio = static_cast<int>(
        unsigned_number(*gnss, "ion_node_ratio", static_cast<std::uint64_t>(cfg.gnss.ion_node_ratio),
                        "gnss"));
  }

  if (const json* air = find(root, "air_data")) {
    reject_unknown_keys(*air, {"pressure", "temperature", "airspeed", "aoa", "aos"}, "air_data");
    cfg.air_data.pressure = air_channel(*air, "pressure", cfg.air_data.pressure, "air_data",
                                        "bias_offset_pa", "noise_pa");
    cfg.air_data.temperature = air_channel(*air, "temperature", cfg.air_data.temperature,
                                           "air_data", "bias_offset_k", "noise_k");
    cfg.air_data.airspeed = air_channel(*air, "airspeed", cfg.air_data.airspeed, "air_data",
                                        "bias_offset_mps", "noise_mps");
    cfg.air_data.angle_of_attack =
        air_channel(*air, "aoa", cfg.air_data.angle_of_attack, "air_data", "bias_offset_deg",
                    "noise_deg", units::deg_to_rad(1.0));
    cfg.air_data.angle_of_sideslip =
        air_channel(*air, "aos", cfg.air_data.angle_of_sideslip, "air_data", "bias_offset_deg",
                    "noise_deg", units::deg_to_rad(1.0));
  }

  const json* camera = find(root, "camera");
  if (!camera) throw ConfigError("missing required section 'camera'");
  reject_unknown_keys(*camera,
                      {"focal_length_mm", "image_width_px", "image_height_px", "pixel_size_mm",
                       "principal_point_px", "mount"},
                      "camera");
  cfg.camera.focal_length = number(*camera, "focal_length_mm", cfg.camera.focal_length, "camera");
  cfg.camera.image_width = static_cast<int>(unsigned_number(
      *camera, "image_width_px", static_cast<std::uint64_t>(cfg.camera.image_width), "camera"));
  cfg.camera.image_height = static_cast<int>(unsigned_number(
      *camera, "image_height_px", static_cast<std::uint64_t>(cfg.camera.image_height), "camera"));
  cfg.camera.pixel_size = number(*camera, "pixel_size_mm", cfg.camera.pixel_size, "camera");
  if (const json* pp = find(*camera, "principal_point_px")) {
    if (!pp->is_array() || pp->size() != 2 || !(*pp)[0].is_number() || !(*pp)[1].is_number()) {
      throw ConfigError("camera.principal_point_px must be an array of two numbers");
    }
    cfg.camera.principal_point_x = (*pp)[0].get<double>();
    cfg.camera.principal_point_y = (*pp)[1].get<double>();
  }
  const json* camera_mount = find(*camera, "mount");
  if (!camera_mount) throw ConfigError("missing required section 'camera.mount'");
  cfg.camera_mount = config_detail::mounting_section(*camera_mount, "camera.mount",
                                                     cfg.camera_mount, mass_full, mass_empty);

  if (const json* cal = find(root, "calibration")) {
    reject_unknown_keys(*cal, {"inertial_reduction", "magnetic_reduction"}, "calibration");
    cfg.inertial_reduction = number(*cal, "inertial_reduction", cfg.inertial_reduction, "calibration");
    cfg.magnetic_reduction = number(*cal, "magnetic_reduction", cfg.magnetic_reduction, "calibration");
  }

  cfg.validate();
  return cfg;
}

inline RunConfig RunConfig::from_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open configuration file: " + path.string());
  nlohmann::json root;
  try {
    in >> root;
  } catch (const nlohmann::json::parse_error& err) {
    throw ConfigError("configuration parse error in " + path.string() + ": " + err.what());
  }
  return from_json(root);
}

}  // namespace sensim
