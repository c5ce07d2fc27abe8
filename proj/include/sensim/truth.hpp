#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Geometry>

#include "sensim/errors.hpp"
#include "sensim/geodesy.hpp"
#include "sensim/kinematics.hpp"
#include "sensim/units.hpp"

namespace sensim {

/// One time-stamped sample of the true aircraft state. SI units and radians
/// throughout; the file representation uses degrees for angles.
struct TruthRecord {
  double t = 0.0;                                  // s
  Vec3 specific_force = Vec3::Zero();              // body frame, m/s^2
  Vec3 angular_rate = Vec3::Zero();                // body frame, rad/s
  Vec3 angular_acceleration = Vec3::Zero();        // body frame, rad/s^2
  Eigen::Quaterniond attitude{1.0, 0.0, 0.0, 0.0}; // body to NED
  Geodetic position;
  Vec3 velocity_ned = Vec3::Zero();                // m/s
  Vec3 magnetic_field_ned = Vec3::Zero();          // nT
  double pressure = 101325.0;                      // Pa
  double temperature = 288.15;                     // K
  double airspeed = 0.0;                           // m/s
  double angle_of_attack = 0.0;                    // rad
  double angle_of_sideslip = 0.0;                  // rad
  double mass = 0.0;                               // kg
};

namespace truth_columns {

inline constexpr const char* mandatory[] = {
    "t_s", "fx_mps2", "fy_mps2", "fz_mps2", "wx_dps", "wy_dps", "wz_dps",
    "qw", "qx", "qy", "qz", "lon_deg", "lat_deg", "h_m",
    "vn_mps", "ve_mps", "vd_mps", "bn_nt", "be_nt", "bd_nt",
    "p_pa", "t_k", "vtas_mps", "aoa_deg", "aos_deg", "mass_kg"};

inline constexpr const char* angular_acceleration[] = {"alx_dps2", "aly_dps2", "alz_dps2"};

}  // namespace truth_columns

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(field);
      field.clear();
    } else if (c != '\r' && c != ' ') {
      field.push_back(c);
    }
  }
  fields.push_back(field);
  return fields;
}

inline double parse_double(const std::string& text, const std::filesystem::path& path,
                           std::size_t row) {
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0') {
    throw DataError(path.string() + ": row " + std::to_string(row) +
                    ": not a number: '" + text + "'");
  }
  if (!std::isfinite(value)) {
    throw DataError(path.string() + ": row " + std::to_string(row) + ": non-finite value");
  }
  return value;
}

inline void append_formatted(std::string& out, double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  out += buf;
}

}  // namespace detail

/// Loads a truth trajectory from a comma-separated file with a named header.
/// Time must be strictly increasing and attitude quaternions unit to 1e-9.
/// When the angular-acceleration columns are absent they are filled by
/// central differencing of the angular rate (one-sided at the ends), which
/// needs at least two records.
inline std::vector<TruthRecord> load_truth(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open truth file: " + path.string());

  std::string header;
  if (!std::getline(in, header)) throw DataError(path.string() + ": empty truth file");
  const auto names = detail::split_csv_line(header);

  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i].empty()) throw DataError(path.string() + ": empty column name in header");
    if (!index.emplace(names[i], i).second) {
      throw DataError(path.string() + ": duplicate column '" + names[i] + "'");
    }
  }

  bool has_alpha = false;
  {
    int alpha_columns = 0;
    for (const char* name : truth_columns::angular_acceleration) {
      alpha_columns += index.count(name) ? 1 : 0;
    }
    if (alpha_columns != 0 && alpha_columns != 3) {
      throw DataError(path.string() + ": angular-acceleration columns must appear all together");
    }
    has_alpha = alpha_columns == 3;
  }

  for (const char* name : truth_columns::mandatory) {
    if (!index.count(name)) {
      throw DataError(path.string() + ": missing mandatory column '" + std::string(name) + "'");
    }
  }
  std::size_t known = std::size(truth_columns::mandatory) + (has_alpha ? 3 : 0);
  if (index.size() != known) {
    for (const auto& [name, pos] : index) {
      bool ok = false;
      for (const char* m : truth_columns::mandatory) ok = ok || name == m;
      for (const char* m : truth_columns::angular_acceleration) ok = ok || name == m;
      if (!ok) throw DataError(path.string() + ": unknown column '" + name + "'");
    }
  }

  const auto col = [&](const char* name) { return index.at(name); };

  std::vector<TruthRecord> records;
  std::string line;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const auto fields = detail::split_csv_line(line);
    if (fields.size() != names.size()) {
      throw DataError(path.string() + ": row " + std::to_string(row) + ": expected " +
                      std::to_string(names.size()) + " fields, got " +
                      std::to_string(fields.size()));
    }
    const auto get = [&](const char* name) {
      return detail::parse_double(fields[col(name)], path, row);
    };

    TruthRecord r;
    r.t = get("t_s");
    r.specific_force = {get("fx_mps2"), get("fy_mps2"), get("fz_mps2")};
    r.angular_rate = {units::deg_to_rad(get("wx_dps")), units::deg_to_rad(get("wy_dps")),
                      units::deg_to_rad(get("wz_dps"))};
    if (has_alpha) {
      r.angular_acceleration = {units::deg_to_rad(get("alx_dps2")),
                                units::deg_to_rad(get("aly_dps2")),
                                units::deg_to_rad(get("alz_dps2"))};
    }
    r.attitude = Eigen::Quaterniond(get("qw"), get("qx"), get("qy"), get("qz"));
    if (std::abs(r.attitude.norm() - 1.0) > 1.0e-9) {
      throw DataError(path.string() + ": row " + std::to_string(row) +
                      ": attitude quaternion is not unit length");
    }
    r.attitude.normalize();
    r.position = {units::deg_to_rad(get("lon_deg")), units::deg_to_rad(get("lat_deg")),
                  get("h_m")};
    r.velocity_ned = {get("vn_mps"), get("ve_mps"), get("vd_mps")};
    r.magnetic_field_ned = {get("bn_nt"), get("be_nt"), get("bd_nt")};
    r.pressure = get("p_pa");
    r.temperature = get("t_k");
    r.airspeed = get("vtas_mps");
    r.angle_of_attack = units::deg_to_rad(get("aoa_deg"));
    r.angle_of_sideslip = units::deg_to_rad(get("aos_deg"));
    r.mass = get("mass_kg");

    if (!records.empty() && !(r.t > records.back().t)) {
      throw DataError(path.string() + ": row " + std::to_string(row) +
                      ": time is not strictly increasing");
    }
    records.push_back(r);
  }

  if (records.size() < 2) {
    throw DataError(path.string() + ": truth needs at least two records");
  }

  if (!has_alpha) {
    const std::size_t n = records.size();
    std::vector<Vec3> alpha(n);
    alpha.front() = (records[1].angular_rate - records[0].angular_rate) /
                    (records[1].t - records[0].t);
    alpha.back() = (records[n - 1].angular_rate - records[n - 2].angular_rate) /
                   (records[n - 1].t - records[n - 2].t);
    for (std::size_t k = 1; k + 1 < n; ++k) {
      alpha[k] = (records[k + 1].angular_rate - records[k - 1].angular_rate) /
                 (records[k + 1].t - records[k - 1].t);
    }
    for (std::size_t k = 0; k < n; ++k) records[k].angular_acceleration = alpha[k];
  }

  return records;
}

/// Writes a truth trajectory in the load_truth column layout.
inline void save_truth(const std::filesystem::path& path,
                       const std::vector<TruthRecord>& records,
                       bool include_angular_acceleration = true) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open truth file for writing: " + path.string());

  std::string line;
  for (const char* name : truth_columns::mandatory) {
    if (!line.empty()) line += ',';
    line += name;
  }
  if (include_angular_acceleration) {
    for (const char* name : truth_columns::angular_acceleration) {
      line += ',';
      line += name;
    }
  }
  out << line << '\n';

  for (const auto& r : records) {
    line.clear();
    const double values[] = {r.t,
                             r.specific_force.x(), r.specific_force.y(), r.specific_force.z(),
                             units::rad_to_deg(r.angular_rate.x()),
                             units::rad_to_deg(r.angular_rate.y()),
                             units::rad_to_deg(r.angular_rate.z()),
                             r.attitude.w(), r.attitude.x(), r.attitude.y(), r.attitude.z(),
                             units::rad_to_deg(r.position.longitude),
                             units::rad_to_deg(r.position.latitude), r.position.altitude,
                             r.velocity_ned.x(), r.velocity_ned.y(), r.velocity_ned.z(),
                             r.magnetic_field_ned.x(), r.magnetic_field_ned.y(),
                             r.magnetic_field_ned.z(),
                             r.pressure, r.temperature, r.airspeed,
                             units::rad_to_deg(r.angle_of_attack),
                             units::rad_to_deg(r.angle_of_sideslip), r.mass};
    for (double v : values) {
      if (!line.empty()) line += ',';
      detail::append_formatted(line, v);
    }
    if (include_angular_acceleration) {
      for (int i = 0; i < 3; ++i) {
        line += ',';
        detail::append_formatted(line, units::rad_to_deg(r.angular_acceleration[i]));
      }
    }
    out << line << '\n';
  }
}

}  // namespace sensim
