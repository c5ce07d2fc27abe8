#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "sensim/random.hpp"

namespace sensim {

/// One air-data channel: a flight-constant bias offset plus white noise, in
/// the unit of the measured quantity.
struct AirChannelSpec {
  double bias_offset_sigma = 0.0;
  double noise_sigma = 0.0;

  void validate() const {
    if (bias_offset_sigma < 0.0 || noise_sigma < 0.0) {
      throw std::invalid_argument("air-data sigmas must be non-negative");
    }
  }
};

/// The five air-data channels (Pa, K, m/s, rad, rad) plus the gas constants
/// used by the Pitot utilities.
struct AirDataSpec {
  AirChannelSpec pressure;
  AirChannelSpec temperature;
  AirChannelSpec airspeed;
  AirChannelSpec angle_of_attack;
  AirChannelSpec angle_of_sideslip;
  double adiabatic_index = 1.4;
  double gas_constant = 287.05;  // J/(kg K), dry air

  void validate() const {
    pressure.validate();
    temperature.validate();
    airspeed.validate();
    angle_of_attack.validate();
    angle_of_sideslip.validate();
    if (!(adiabatic_index > 1.0)) throw std::invalid_argument("adiabatic index must exceed 1");
    if (!(gas_constant > 0.0)) throw std::invalid_argument("gas constant must be positive");
  }
};

/// True airspeed from the compressible Pitot relation, given static and
/// total pressure (Pa) and density (kg/m^3).
inline double tas_from_pressures(double static_pressure, double total_pressure,
                                 double density, double adiabatic_index = 1.4) {
  if (!(static_pressure > 0.0) || !(density > 0.0)) {
    throw std::invalid_argument("static pressure and density must be positive");
  }
  if (total_pressure < static_pressure) {
    throw std::domain_error("invalid measurement: total pressure below static pressure");
  }
  const double k = adiabatic_index;
  const double ratio = (total_pressure - static_pressure) / static_pressure + 1.0;
  return std::sqrt(2.0 * k / (k - 1.0) * static_pressure / density *
                   (std::pow(ratio, (k - 1.0) / k) - 1.0));
}

/// Exact algebraic inverse of tas_from_pressures.
inline double total_pressure_from_tas(double static_pressure, double density, double tas,
                                      double adiabatic_index = 1.4) {
  if (!(static_pressure > 0.0) || !(density > 0.0)) {
    throw std::invalid_argument("static pressure and density must be positive");
  }
  const double k = adiabatic_index;
  const double base = 1.0 + (k - 1.0) / (2.0 * k) * density * tas * tas / static_pressure;
  return static_pressure * std::pow(base, k / (k - 1.0));
}

/// Ideal-gas density.
inline double density_from_p_T(double pressure, double temperature,
                               double gas_constant = 287.05) {
  if (!(temperature > 0.0) || !(gas_constant > 0.0)) {
    throw std::invalid_argument("temperature and gas constant must be positive");
  }
  return pressure / (gas_constant * temperature);
}

/// The five measurement channels of one flight. Each channel owns its own
/// stream: one offset draw at power-up, one noise draw per measurement, so
/// the channels stay mutually independent.
class AirDataSystem {
 public:
  AirDataSystem(const AirDataSpec& spec, const SensorSeedSet& seeds)
      : spec_(spec),
        osp_(spec.pressure, seeds.run.osp),
        oat_(spec.temperature, seeds.run.oat),
        tas_(spec.airspeed, seeds.run.tas),
        aoa_(spec.angle_of_attack, seeds.run.aoa),
        aos_(spec.angle_of_sideslip, seeds.run.aos) {
    spec_.validate();
  }

  double measure_pressure(double truth) { return osp_.measure(truth); }
  double measure_temperature(double truth) { return oat_.measure(truth); }
  double measure_airspeed(double truth) { return tas_.measure(truth); }
  double measure_angle_of_attack(double truth) { return aoa_.measure(truth); }
  double measure_angle_of_sideslip(double truth) { return aos_.measure(truth); }

  const AirDataSpec& spec() const { return spec_; }

 private:
  struct Channel {
    AirChannelSpec spec;
    GaussianStream stream;
    double offset;

    Channel(const AirChannelSpec& channel_spec, std::uint64_t seed)
        : spec(channel_spec), stream(seed), offset(spec.bias_offset_sigma * stream.next()) {}

    double measure(double truth) { return truth + offset + spec.noise_sigma * stream.next(); }
  };

  AirDataSpec spec_;
  Channel osp_, oat_, tas_, aoa_, aos_;
};

}  // namespace sensim
