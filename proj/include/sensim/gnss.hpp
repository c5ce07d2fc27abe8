#pragma once

#include <cstdint>
#include <stdexcept>

#include "sensim/geodesy.hpp"
#include "sensim/kinematics.hpp"
#include "sensim/random.hpp"

namespace sensim {

/// GNSS receiver error parameters: white position/velocity noise plus a slow
/// ionospheric random walk stepped once per ion_node_ratio receiver ticks and
/// linearly interpolated in between.
struct GnssSpec {
  double sigma_position_horizontal = 2.12;  // m, per North/East axis
  double sigma_position_vertical = 4.25;    // m
  double sigma_ionosphere = 0.16;           // m per node step
  double ionosphere_offset_sigma = 8.0;     // m, node 0
  double sigma_velocity = 7.41e-2;          // m/s per axis
  double dt = 1.0;                          // s between fixes
  int ion_node_ratio = 60;                  // node period / fix period

  void validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("gnss dt must be positive");
    if (ion_node_ratio < 1) {
      throw std::invalid_argument("gnss ionospheric node ratio must be a positive integer");
    }
    if (sigma_position_horizontal < 0.0 || sigma_position_vertical < 0.0 ||
        sigma_ionosphere < 0.0 || ionosphere_offset_sigma < 0.0 || sigma_velocity < 0.0) {
      throw std::invalid_argument("gnss sigmas must be non-negative");
    }
  }
};

/// Random-walk state of the slow ionospheric error. Holds the node bounding
/// the current interpolation window; the next node is generated eagerly when
/// a window opens so the draw order stays fixed.
struct IonosphericState {
  std::uint64_t window = 0;
  Vec3 node_current = Vec3::Zero();
  Vec3 node_next = Vec3::Zero();
};

/// Node 0 is the per-flight offset (three draws); node 1 follows immediately
/// (three more draws).
inline IonosphericState init_ionosphere(const GnssSpec& spec, GaussianStream& stream) {
  IonosphericState ion;
  ion.node_current = spec.ionosphere_offset_sigma * stream.next_vec3();
  ion.node_next = ion.node_current + spec.sigma_ionosphere * stream.next_vec3();
  return ion;
}

/// Opens the next window: the upper node becomes the lower one and a fresh
/// node is drawn (three draws).
inline void advance_ion_node(const GnssSpec& spec, IonosphericState& ion,
                             GaussianStream& stream) {
  ion.node_current = ion.node_next;
  ion.node_next = ion.node_current + spec.sigma_ionosphere * stream.next_vec3();
  ++ion.window;
}

/// Per-flight GNSS receiver. Ticks advance by dt per measure_position call,
/// the first fix being at t = dt. Call order per tick is position first,
/// velocity second; each consumes three draws, with three extra node draws
/// whenever an interpolation window opens.
class GnssReceiver {
 public:
  GnssReceiver(const GnssSpec& spec, std::uint64_t run_seed) : spec_(spec), run_(run_seed) {
    spec_.validate();
    ion_ = init_ionosphere(spec_, run_);
  }

  Geodetic measure_position(const Geodetic& truth) {
    ++tick_;
    const auto ratio = static_cast<std::uint64_t>(spec_.ion_node_ratio);
    const std::uint64_t window = tick_ / ratio;
    const std::uint64_t remainder = tick_ % ratio;
    while (ion_.window < window) advance_ion_node(spec_, ion_, run_);

    const Vec3 ion_error = ion_.node_current + (static_cast<double>(remainder) /
                                                static_cast<double>(ratio)) *
                                                   (ion_.node_next - ion_.node_current);
    Vec3 noise;
    noise.x() = spec_.sigma_position_horizontal * run_.next();
    noise.y() = spec_.sigma_position_horizontal * run_.next();
    noise.z() = spec_.sigma_position_vertical * run_.next();
    last_position_error_ = noise + ion_error;
    return geodetic_offset(truth, last_position_error_);
  }

  Vec3 measure_velocity(const Vec3& velocity_ned) {
    return velocity_ned + spec_.sigma_velocity * run_.next_vec3();
  }

  const IonosphericState& ionosphere() const { return ion_; }
  const Vec3& last_position_error_ned() const { return last_position_error_; }
  std::uint64_t ticks() const { return tick_; }

 private:
  GnssSpec spec_;
  GaussianStream run_;
  IonosphericState ion_;
  Vec3 last_position_error_ = Vec3::Zero();
  std::uint64_t tick_ = 0;
};

/// Per-axis sigma from a circular-error-probable figure (CEP is 1.18 sigma).
inline double sigma_from_cep(double cep) { return cep / 1.18; }

/// Per-axis sigma from a 50th-percentile error figure (0.67448 sigma).
inline double sigma_from_median_error(double median) { return median / 0.67448; }

}  // namespace sensim
