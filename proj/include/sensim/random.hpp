#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <boost/math/distributions/normal.hpp>

#include "sensim/errors.hpp"

namespace sensim {

/// Deterministic stream of independent standard-normal draws.
///
/// Every variate consumes exactly one mt19937_64 output, mapped through the
/// inverse normal CDF. The fixed one-draw-per-variate cost is what keeps the
/// draw-order contracts of the sensor models stable: inserting or removing a
/// consumer never shifts the draws seen by another stream, and replaying a
/// seed replays the sequence bit for bit on the same platform.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

  /// One N(0,1) draw.
  double next() {
    ++draws_;
    // 53-bit mantissa, offset by half an ulp so u lies strictly inside (0,1).
    const double u =
        (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    return boost::math::quantile(normal_, u);
  }

  /// Three draws packed as (x, y, z).
  Eigen::Vector3d next_vec3() {
    const double x = next();
    const double y = next();
    const double z = next();
    return {x, y, z};
  }

  std::uint64_t draws_emitted() const { return draws_; }

 private:
  std::mt19937_64 engine_;
  boost::math::normal_distribution<double> normal_;
  std::uint64_t draws_ = 0;
};

/// Pre-generated pool of aircraft and flight seeds.
///
/// One uniform 64-bit generator seeded with the master seed emits the pool
/// pairwise (aircraft seed, then flight seed, per slot), so rebuilding with a
/// larger capacity preserves every previously issued pair as a prefix.
struct SeedCatalog {
  std::uint64_t master_seed = 0;
  std::vector<std::uint64_t> aircraft_seeds;
  std::vector<std::uint64_t> flight_seeds;

  std::size_t capacity() const { return aircraft_seeds.size(); }

  static SeedCatalog build(std::uint64_t master_seed, std::size_t capacity) {
    if (capacity == 0) {
      throw std::invalid_argument("seed catalog capacity must be at least 1");
    }
    SeedCatalog catalog;
    catalog.master_seed = master_seed;
    catalog.aircraft_seeds.reserve(capacity);
    catalog.flight_seeds.reserve(capacity);
    std::mt19937_64 engine(master_seed);
    for (std::size_t i = 0; i < capacity; ++i) {
      catalog.aircraft_seeds.push_back(engine());
      catalog.flight_seeds.push_back(engine());
    }
    return catalog;
  }

  /// Writes one "aircraft flight" pair per line so a generated catalog can be
  /// stored once and reused across sessions.
  void save(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open seed catalog for writing: " + path.string());
    out << "# sensim seed catalog master=" << master_seed << "\n";
    for (std::size_t i = 0; i < capacity(); ++i) {
      out << aircraft_seeds[i] << ' ' << flight_seeds[i] << '\n';
    }
  }

  static SeedCatalog load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open seed catalog: " + path.string());
    SeedCatalog catalog;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      if (line.front() == '#') {
        const auto pos = line.find("master=");
        if (pos != std::string::npos) {
          catalog.master_seed = std::stoull(line.substr(pos + 7));
        }
        continue;
      }
      std::istringstream row(line);
      std::uint64_t aircraft = 0;
      std::uint64_t flight = 0;
      if (!(row >> aircraft >> flight)) {
        throw DataError("seed catalog " + path.string() + ": bad pair on line " +
                        std::to_string(line_no));
      }
      catalog.aircraft_seeds.push_back(aircraft);
      catalog.flight_seeds.push_back(flight);
    }
    if (catalog.capacity() == 0) {
      throw DataError("seed catalog " + path.string() + " holds no seed pairs");
    }
    return catalog;
  }
};

/// Per-sensor seeds for one (aircraft, flight) pair.
///
/// Fixed seeds drive the hardware realizations that survive across flights of
/// one airframe (scale factors, cross couplings, hard iron, mounting); run
/// seeds drive the power-up offsets and the in-run noise of a single flight.
struct SensorSeedSet {
  struct Fixed {
    std::uint64_t acc, gyr, mag, plat, cam;
  } fixed{};

  struct Run {
    std::uint64_t acc, gyr, mag, osp, oat, tas, aoa, aos, gnss;
  } run{};

  /// One generator seeded with the aircraft seed is drawn five times (ACC,
  /// GYR, MAG, PLAT, CAM); a second seeded with the flight seed is drawn nine
  /// times (ACC, GYR, MAG, OSP, OAT, TAS, AOA, AOS, GNSS).
  static SensorSeedSet derive(std::uint64_t aircraft_seed, std::uint64_t flight_seed) {
    std::mt19937_64 fixed_engine(aircraft_seed);
    std::mt19937_64 run_engine(flight_seed);
    SensorSeedSet seeds;
    seeds.fixed = {fixed_engine(), fixed_engine(), fixed_engine(),
                   fixed_engine(), fixed_engine()};
    seeds.run = {run_engine(), run_engine(), run_engine(),
                 run_engine(), run_engine(), run_engine(),
                 run_engine(), run_engine(), run_engine()};
    return seeds;
  }
};

}  // namespace sensim
