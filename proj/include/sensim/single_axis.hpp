#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "sensim/random.hpp"

namespace sensim {

/// Discrete error model of one sensor axis: a power-up bias offset, a clamped
/// bias-drift random walk, and white noise. Units follow the measured
/// quantity u: bias_offset [u], bias_drift [u/sqrt(s)], white_noise
/// [u*sqrt(s)].
struct SingleAxisSpec {
  double bias_offset = 0.0;
  double bias_drift = 0.0;
  double white_noise = 0.0;
  double dt = 0.01;  ///< sample period, s

  /// Half-width of the drift saturation band in units of
  /// bias_drift * sqrt(dt). The default of 100 models the end of the
  /// warm-up transient; set to +inf to let the walk run free.
  double drift_clamp_factor = 100.0;

  double drift_band() const {
    return bias_drift > 0.0 ? drift_clamp_factor * bias_drift * std::sqrt(dt) : 0.0;
  }

  void validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("single-axis dt must be positive");
    if (bias_offset < 0.0 || bias_drift < 0.0 || white_noise < 0.0) {
      throw std::invalid_argument("single-axis sigmas must be non-negative");
    }
    if (!(drift_clamp_factor > 0.0)) {
      throw std::invalid_argument("drift clamp factor must be positive");
    }
  }
};

/// Evolving error state of one axis.
///
/// Draw order per step is fixed: the drift increment first, the white-noise
/// draw second.
struct SingleAxisState {
  double offset = 0.0;      ///< bias_offset * N, frozen at power-up
  double drift = 0.0;       ///< saturated random-walk sum
  double last_noise = 0.0;  ///< white-noise contribution of the latest step
  std::uint64_t steps = 0;

  static SingleAxisState init(const SingleAxisSpec& spec, GaussianStream& stream) {
    SingleAxisState state;
    state.offset = spec.bias_offset * stream.next();
    return state;
  }

  /// Advances the error one sample period and returns the measurement of
  /// true_value.
  double step(const SingleAxisSpec& spec, double true_value, GaussianStream& stream) {
    const double band = spec.drift_band();
    drift += spec.bias_drift * std::sqrt(spec.dt) * stream.next();
    drift = std::clamp(drift, -band, band);
    last_noise = spec.white_noise / std::sqrt(spec.dt) * stream.next();
    ++steps;
    return true_value + offset + drift + last_noise;
  }
};

/// First two moments of the error (or of one of its integrals), split by
/// source. The total is the sum of the three components, which are mutually
/// independent.
struct ErrorStats {
  double mean = 0.0;
  double offset_variance = 0.0;
  double drift_variance = 0.0;
  double noise_variance = 0.0;

  double variance() const { return offset_variance + drift_variance + noise_variance; }
  double stddev() const { return std::sqrt(variance()); }
};

namespace detail {

inline double step_count(const SingleAxisSpec& spec, double t) {
  if (t < 0.0) throw std::invalid_argument("time must be non-negative");
  return static_cast<double>(std::llround(t / spec.dt));
}

// Sum of k^2 for k = 1..n.
inline double sum_squares(double n) { return n * (n + 1.0) * (2.0 * n + 1.0) / 6.0; }

// Sum of (k (k+1) / 2)^2 for k = 1..n, i.e. of squared triangular numbers.
inline double sum_triangular_squares(double n) {
  const double sum_k2 = sum_squares(n);
  const double sum_k3 = n * n * (n + 1.0) * (n + 1.0) / 4.0;
  const double sum_k4 = n * (n + 1.0) * (2.0 * n + 1.0) * (3.0 * n * n + 3.0 * n - 1.0) / 30.0;
  return (sum_k4 + 2.0 * sum_k3 + sum_k2) / 4.0;
}

}  // namespace detail

/// Closed-form moments of the unclamped error after a span t (exact for any
/// step count): variance B0^2 + su^2 s dt + sv^2 / dt, zero mean.
inline ErrorStats theory_error_stats(const SingleAxisSpec& spec, double t) {
  const double s = detail::step_count(spec, t);
  ErrorStats out;
  out.offset_variance = spec.bias_offset * spec.bias_offset;
  out.drift_variance = spec.bias_drift * spec.bias_drift * s * spec.dt;
  out.noise_variance = spec.white_noise * spec.white_noise / spec.dt;
  return out;
}

/// Exact moments of the rectangular-rule integral of the error, starting at
/// initial_value.
inline ErrorStats theory_first_integral_stats(const SingleAxisSpec& spec,
                                              double initial_value, double t) {
  const double s = detail::step_count(spec, t);
  const double dt = spec.dt;
  ErrorStats out;
  out.mean = initial_value;
  out.offset_variance = spec.bias_offset * spec.bias_offset * (s * dt) * (s * dt);
  out.drift_variance =
      spec.bias_drift * spec.bias_drift * dt * dt * dt * detail::sum_squares(s);
  out.noise_variance = spec.white_noise * spec.white_noise * s * dt;
  return out;
}

/// Large-s limit of theory_first_integral_stats:
/// B0^2 t^2 + su^2 t^3 / 3 + sv^2 t.
inline ErrorStats theory_first_integral_stats_asymptotic(const SingleAxisSpec& spec,
                                                         double initial_value, double t) {
  ErrorStats out;
  out.mean = initial_value;
  out.offset_variance = spec.bias_offset * spec.bias_offset * t * t;
  out.drift_variance = spec.bias_drift * spec.bias_drift * t * t * t / 3.0;
  out.noise_variance = spec.white_noise * spec.white_noise * t;
  return out;
}

/// Exact moments of the twice-integrated error. first_initial is the starting
/// value of the first integral, second_initial that of the second; the mean
/// grows as second_initial + first_initial * t.
inline ErrorStats theory_second_integral_stats(const SingleAxisSpec& spec,
                                               double first_initial,
                                               double second_initial, double t) {
  const double s = detail::step_count(spec, t);
  const double dt = spec.dt;
  const double dt2 = dt * dt;
  ErrorStats out;
  out.mean = second_initial + first_initial * s * dt;
  out.offset_variance = spec.bias_offset * spec.bias_offset * dt2 * dt2 *
                        s * s * (s + 1.0) * (s + 1.0) / 4.0;
  out.drift_variance = spec.bias_drift * spec.bias_drift * dt2 * dt2 * dt *
                       detail::sum_triangular_squares(s);
  out.noise_variance =
      spec.white_noise * spec.white_noise * dt * dt2 * detail::sum_squares(s);
  return out;
}

/// Large-s limit of theory_second_integral_stats:
/// B0^2 t^4 / 4 + su^2 t^5 / 20 + sv^2 t^3 / 3.
inline ErrorStats theory_second_integral_stats_asymptotic(const SingleAxisSpec& spec,
                                                          double first_initial,
                                                          double second_initial,
                                                          double t) {
  ErrorStats out;
  out.mean = second_initial + first_initial * t;
  out.offset_variance = spec.bias_offset * spec.bias_offset * t * t * t * t / 4.0;
  out.drift_variance = spec.bias_drift * spec.bias_drift * t * t * t * t * t / 20.0;
  out.noise_variance = spec.white_noise * spec.white_noise * t * t * t / 3.0;
  return out;
}

/// Bias drift from a datasheet stability figure: a 1-sigma output change of
/// bias_change over interval seconds gives sigma_u = bias_change / sqrt(t).
/// bias_change must already be in the working unit (e.g. deg/s, m/s^2).
inline double sigma_u_from_stability(double bias_change, double interval) {
  if (!(interval > 0.0)) throw std::invalid_argument("stability interval must be positive");
  return bias_change / std::sqrt(interval);
}

/// How a datasheet quotes the sensor noise level.
enum class RandomWalkSpecKind {
  per_sqrt_hour,    ///< angle/velocity random walk in unit/sqrt(hr)
  root_psd,         ///< root PSD, already unit*sqrt(s)
  psd,              ///< PSD in unit^2*s
  random_walk_psd,  ///< PSD of the integrated output, needs the sample period
};

/// White-noise sigma_v in unit*sqrt(s) from a datasheet noise figure.
inline double sigma_v_from_random_walk_spec(double value, RandomWalkSpecKind kind,
                                            double dt = 0.0) {
  switch (kind) {
    case RandomWalkSpecKind::per_sqrt_hour:
      return value / 60.0;
    case RandomWalkSpecKind::root_psd:
      return value;
    case RandomWalkSpecKind::psd:
      if (value < 0.0) throw std::invalid_argument("PSD must be non-negative");
      return std::sqrt(value);
    case RandomWalkSpecKind::random_walk_psd:
      if (!(dt > 0.0)) {
        throw std::invalid_argument("random-walk PSD conversion needs the sample period");
      }
      return value * std::sqrt(dt);
  }
  throw std::invalid_argument("unknown random-walk spec kind");
}

}  // namespace sensim
