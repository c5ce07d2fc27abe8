#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

#include "sensim/random.hpp"
#include "sensim/single_axis.hpp"

namespace sensim {

/// Empirical moments across runs at one checkpoint, for the error and its
/// first and second rectangular-rule integrals.
struct MonteCarloCheckpoint {
  double t = 0.0;
  double error_mean = 0.0, error_std = 0.0;
  double first_integral_mean = 0.0, first_integral_std = 0.0;
  double second_integral_mean = 0.0, second_integral_std = 0.0;
};

struct MonteCarloTable {
  SingleAxisSpec spec;
  double first_initial = 0.0;
  double second_initial = 0.0;
  std::size_t runs = 0;
  std::vector<MonteCarloCheckpoint> checkpoints;
};

namespace detail {

struct RunningMoments {
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t n = 0;

  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }
  double sample_variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
  double sample_std() const { return std::sqrt(sample_variance()); }
};

}  // namespace detail

/// Simulates `runs` independent realizations of the single-axis error over
/// `horizon` seconds, integrating twice by the rectangular rule, and reports
/// mean and sample standard deviation across runs at each checkpoint.
///
/// Run r draws from a stream seeded with the r-th output of an mt19937_64
/// seeded with base_seed; the whole table is a pure function of its
/// arguments. Runs execute on `threads` worker threads (0 = hardware pick);
/// the result does not depend on the thread count.
inline MonteCarloTable monte_carlo_single_axis(const SingleAxisSpec& spec,
                                               std::size_t runs, double horizon,
                                               const std::vector<double>& checkpoints,
                                               double first_initial = 0.0,
                                               double second_initial = 0.0,
                                               std::uint64_t base_seed = 1,
                                               unsigned threads = 0) {
  spec.validate();
  if (runs == 0) throw std::invalid_argument("monte carlo needs at least one run");
  if (checkpoints.empty()) throw std::invalid_argument("monte carlo needs at least one checkpoint");
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");

  std::vector<std::uint64_t> checkpoint_steps;
  checkpoint_steps.reserve(checkpoints.size());
  const auto total_steps = static_cast<std::uint64_t>(std::llround(horizon / spec.dt));
  for (double t : checkpoints) {
    const auto s = static_cast<std::uint64_t>(std::llround(t / spec.dt));
    if (s == 0 || s > total_steps) {
      throw std::invalid_argument("checkpoint outside (0, horizon]");
    }
    checkpoint_steps.push_back(s);
  }

  std::vector<std::uint64_t> run_seeds(runs);
  std::mt19937_64 seeder(base_seed);
  for (auto& s : run_seeds) s = seeder();

  // samples[c][r]: value of run r at checkpoint c, per integration level.
  const std::size_t nc = checkpoints.size();
  std::vector<std::vector<double>> error_samples(nc, std::vector<double>(runs));
  std::vector<std::vector<double>> first_samples(nc, std::vector<double>(runs));
  std::vector<std::vector<double>> second_samples(nc, std::vector<double>(runs));

  const auto simulate_run = [&](std::size_t r) {
    GaussianStream stream(run_seeds[r]);
    SingleAxisState state = SingleAxisState::init(spec, stream);
    double error = 0.0;
    double first = first_initial;
    double second = second_initial;
    std::size_t next_cp = 0;
    for (std::uint64_t s = 1; s <= total_steps && next_cp < nc; ++s) {
      error = state.step(spec, 0.0, stream);
      first += spec.dt * error;
      second += spec.dt * first;
      while (next_cp < nc && checkpoint_steps[next_cp] == s) {
        error_samples[next_cp][r] = error;
        first_samples[next_cp][r] = first;
        second_samples[next_cp][r] = second;
        ++next_cp;
      }
    }
  };

  unsigned worker_count = threads != 0 ? threads : std::thread::hardware_concurrency();
  if (worker_count == 0) worker_count = 1;
  worker_count = static_cast<unsigned>(std::min<std::size_t>(worker_count, runs));
  if (worker_count <= 1) {
    for (std::size_t r = 0; r < runs; ++r) simulate_run(r);
  } else {
    std::vector<std::thread> workers;
    workers.reserve(worker_count);
    for (unsigned w = 0; w < worker_count; ++w) {
      workers.emplace_back([&, w] {
        for (std::size_t r = w; r < runs; r += worker_count) simulate_run(r);
      });
    }
    for (auto& t : workers) t.join();
  }

  MonteCarloTable table;
  table.spec = spec;
  table.first_initial = first_initial;
  table.second_initial = second_initial;
  table.runs = runs;
  table.checkpoints.resize(nc);
  for (std::size_t c = 0; c < nc; ++c) {
    detail::RunningMoments e, f, g;
    for (std::size_t r = 0; r < runs; ++r) {
      e.add(error_samples[c][r]);
      f.add(first_samples[c][r]);
      g.add(second_samples[c][r]);
    }
    auto& cp = table.checkpoints[c];
    cp.t = static_cast<double>(checkpoint_steps[c]) * spec.dt;
    cp.error_mean = e.mean;
    cp.error_std = e.sample_std();
    cp.first_integral_mean = f.mean;
    cp.first_integral_std = f.sample_std();
    cp.second_integral_mean = g.mean;
    cp.second_integral_std = g.sample_std();
  }
  return table;
}

/// Verdict of one checkpoint against the closed-form moments: chi-square band
/// test on each variance, z-test on each mean.
struct TheoryComparison {
  struct Row {
    double t = 0.0;
    bool error_variance_ok = false, first_variance_ok = false, second_variance_ok = false;
    bool error_mean_ok = false, first_mean_ok = false, second_mean_ok = false;

    bool all_ok() const {
      return error_variance_ok && first_variance_ok && second_variance_ok &&
             error_mean_ok && first_mean_ok && second_mean_ok;
    }
  };

  double confidence = 0.0;
  std::vector<Row> rows;

  bool all_ok() const {
    for (const auto& row : rows) {
      if (!row.all_ok()) return false;
    }
    return !rows.empty();
  }
};

/// Compares an empirical table with the exact closed-form oracles at the
/// given two-sided confidence level (default 99%).
inline TheoryComparison compare_to_theory(const MonteCarloTable& table,
                                          double confidence = 0.99) {
  if (table.runs < 2) {
    throw std::invalid_argument("theory comparison needs at least two runs");
  }
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::invalid_argument("confidence must lie in (0, 1)");
  }

  const double n = static_cast<double>(table.runs);
  const double tail = (1.0 - confidence) / 2.0;
  const boost::math::chi_squared_distribution<double> chi2(n - 1.0);
  const double chi_lo = boost::math::quantile(chi2, tail);
  const double chi_hi = boost::math::quantile(chi2, 1.0 - tail);
  const double z = boost::math::quantile(boost::math::normal_distribution<double>(),
                                         1.0 - tail);

  const auto variance_ok = [&](double sample_std, double theory_variance) {
    const double s2 = sample_std * sample_std;
    if (theory_variance == 0.0) return s2 == 0.0;
    const double stat = (n - 1.0) * s2 / theory_variance;
    return stat >= chi_lo && stat <= chi_hi;
  };
  const auto mean_ok = [&](double sample_mean, double theory_mean, double theory_variance) {
    if (theory_variance == 0.0) {
      // Degenerate spec: only accumulation round-off separates the two.
      return std::abs(sample_mean - theory_mean) <= 1.0e-9 * std::max(1.0, std::abs(theory_mean));
    }
    const double limit = z * std::sqrt(theory_variance / n);
    return std::abs(sample_mean - theory_mean) <= limit;
  };

  TheoryComparison report;
  report.confidence = confidence;
  report.rows.reserve(table.checkpoints.size());
  for (const auto& cp : table.checkpoints) {
    const ErrorStats e = theory_error_stats(table.spec, cp.t);
    const ErrorStats f = theory_first_integral_stats(table.spec, table.first_initial, cp.t);
    const ErrorStats g = theory_second_integral_stats(table.spec, table.first_initial,
                                                      table.second_initial, cp.t);
    TheoryComparison::Row row;
    row.t = cp.t;
    row.error_variance_ok = variance_ok(cp.error_std, e.variance());
    row.first_variance_ok = variance_ok(cp.first_integral_std, f.variance());
    row.second_variance_ok = variance_ok(cp.second_integral_std, g.variance());
    row.error_mean_ok = mean_ok(cp.error_mean, e.mean, e.variance());
    row.first_mean_ok = mean_ok(cp.first_integral_mean, f.mean, f.variance());
    row.second_mean_ok = mean_ok(cp.second_integral_mean, g.mean, g.variance());
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace sensim
