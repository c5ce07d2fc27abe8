// Command-line front end: simulate (truth -> sensed), montecarlo (single-axis
// validation), seeds (catalog handling), theory (closed-form moment tables).
//
// Exit codes: 0 ok, 2 configuration error, 3 data error, 4 validation failure.

#include <cstdio>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sensim/config.hpp"
#include "sensim/errors.hpp"
#include "sensim/montecarlo.hpp"
#include "sensim/random.hpp"
#include "sensim/simulation.hpp"
#include "sensim/single_axis.hpp"
#include "sensim/truth.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitValidation = 4;

struct SingleAxisFlags {
  double bias_offset = 1.6e-2;
  double bias_drift = 4.0e-3;
  double white_noise = 1.0e-3;
  double dt = 0.01;
  double clamp_factor = 0.0;  // 0 = unclamped
  double first_initial = 0.0;
  double second_initial = 0.0;

  sensim::SingleAxisSpec spec() const {
    sensim::SingleAxisSpec out;
    out.bias_offset = bias_offset;
    out.bias_drift = bias_drift;
    out.white_noise = white_noise;
    out.dt = dt;
    out.drift_clamp_factor =
        clamp_factor > 0.0 ? clamp_factor : std::numeric_limits<double>::infinity();
    return out;
  }
};

void add_single_axis_flags(CLI::App* cmd, SingleAxisFlags& flags) {
  cmd->add_option("--b0", flags.bias_offset, "bias offset B0");
  cmd->add_option("--sigma-u", flags.bias_drift, "bias drift sigma_u [unit/sqrt(s)]");
  cmd->add_option("--sigma-v", flags.white_noise, "white noise sigma_v [unit*sqrt(s)]");
  cmd->add_option("--dt", flags.dt, "sample period [s]");
  cmd->add_option("--clamp-factor", flags.clamp_factor,
                  "drift clamp in units of sigma_u*sqrt(dt); 0 leaves the walk free");
  cmd->add_option("--f0", flags.first_initial, "initial value of the first integral");
  cmd->add_option("--g0", flags.second_initial, "initial value of the second integral");
}

std::vector<double> checkpoint_grid(double horizon, int count) {
  std::vector<double> grid;
  grid.reserve(count);
  for (int k = 1; k <= count; ++k) grid.push_back(horizon * k / count);
  return grid;
}

int run_simulate(const std::string& config_path, const std::string& truth_path,
                 const std::string& out_dir, std::optional<std::size_t> aircraft,
                 std::optional<std::size_t> flight) {
  sensim::RunConfig config = sensim::RunConfig::from_json_file(config_path);
  if (aircraft || flight) {
    if (config.seeds.has_explicit_pair) {
      throw sensim::ConfigError("--aircraft/--flight need a catalog-based seeds section");
    }
    if (aircraft) config.seeds.aircraft = *aircraft;
    if (flight) config.seeds.flight = *flight;
  }

  const auto truth = sensim::load_truth(truth_path);
  const auto output = sensim::run_simulation(config, truth, out_dir);
  const auto [aircraft_seed, flight_seed] = config.seed_pair();

  std::printf("seeds: aircraft=%llu flight=%llu\n",
              static_cast<unsigned long long>(aircraft_seed),
              static_cast<unsigned long long>(flight_seed));
  std::printf("%s: %zu rows\n", output.sensed_file.string().c_str(), output.sensed_rows);
  std::printf("%s: %zu rows\n", output.gnss_file.string().c_str(), output.gnss_rows);
  std::printf("%s: %zu rows\n", output.camera_file.string().c_str(), output.camera_rows);
  return kExitOk;
}

int run_montecarlo(const SingleAxisFlags& flags, std::size_t runs, double horizon,
                   int checkpoints, std::uint64_t seed, double confidence, unsigned threads) {
  const sensim::SingleAxisSpec spec = flags.spec();
  const auto table = sensim::monte_carlo_single_axis(
      spec, runs, horizon, checkpoint_grid(horizon, checkpoints), flags.first_initial,
      flags.second_initial, seed, threads);
  const auto report = sensim::compare_to_theory(table, confidence);

  std::printf("# %zu runs, horizon %g s, confidence %g\n", runs, horizon, confidence);
  std::printf("%10s %12s %12s %6s %12s %12s %6s %12s %12s %6s\n", "t_s", "err_std",
              "err_theory", "ok", "int1_std", "int1_theory", "ok", "int2_std", "int2_theory",
              "ok");
  int band_failures = 0;
  for (std::size_t c = 0; c < table.checkpoints.size(); ++c) {
    const auto& cp = table.checkpoints[c];
    const auto& row = report.rows[c];
    const auto e = sensim::theory_error_stats(spec, cp.t);
    const auto f = sensim::theory_first_integral_stats(spec, flags.first_initial, cp.t);
    const auto g = sensim::theory_second_integral_stats(spec, flags.first_initial,
                                                        flags.second_initial, cp.t);
    band_failures += !row.error_variance_ok + !row.first_variance_ok + !row.second_variance_ok;
    std::printf("%10.2f %12.5g %12.5g %6s %12.5g %12.5g %6s %12.5g %12.5g %6s\n", cp.t,
                cp.error_std, e.stddev(), row.error_variance_ok ? "pass" : "FAIL",
                cp.first_integral_std, f.stddev(), row.first_variance_ok ? "pass" : "FAIL",
                cp.second_integral_std, g.stddev(), row.second_variance_ok ? "pass" : "FAIL");
  }

  const int bands = 3 * static_cast<int>(table.checkpoints.size());
  const int allowed = bands - (9 * bands) / 10;  // at least 90% of bands must hold
  std::printf("# %d of %d confidence bands failed (allowed %d)\n", band_failures, bands, allowed);
  if (band_failures > allowed) {
    std::printf("validation FAILED\n");
    return kExitValidation;
  }
  std::printf("validation passed\n");
  return kExitOk;
}

int run_seeds(std::uint64_t master, std::size_t capacity, const std::string& catalog_path,
              const std::string& out_path, std::optional<std::size_t> aircraft,
              std::optional<std::size_t> flight) {
  const sensim::SeedCatalog catalog = catalog_path.empty()
                                          ? sensim::SeedCatalog::build(master, capacity)
                                          : sensim::SeedCatalog::load(catalog_path);
  if (!out_path.empty()) {
    catalog.save(out_path);
    std::printf("wrote %zu seed pairs to %s\n", catalog.capacity(), out_path.c_str());
  }

  if (aircraft || flight) {
    const std::size_t i = aircraft.value_or(0);
    const std::size_t j = flight.value_or(0);
    if (i >= catalog.capacity() || j >= catalog.capacity()) {
      throw sensim::ConfigError("aircraft/flight index outside the catalog capacity");
    }
    const auto seeds =
        sensim::SensorSeedSet::derive(catalog.aircraft_seeds[i], catalog.flight_seeds[j]);
    std::printf("aircraft[%zu]=%llu flight[%zu]=%llu\n", i,
                static_cast<unsigned long long>(catalog.aircraft_seeds[i]), j,
                static_cast<unsigned long long>(catalog.flight_seeds[j]));
    std::printf("fixed: acc=%llu gyr=%llu mag=%llu plat=%llu cam=%llu\n",
                static_cast<unsigned long long>(seeds.fixed.acc),
                static_cast<unsigned long long>(seeds.fixed.gyr),
                static_cast<unsigned long long>(seeds.fixed.mag),
                static_cast<unsigned long long>(seeds.fixed.plat),
                static_cast<unsigned long long>(seeds.fixed.cam));
    std::printf("run: acc=%llu gyr=%llu mag=%llu osp=%llu oat=%llu tas=%llu aoa=%llu aos=%llu "
                "gnss=%llu\n",
                static_cast<unsigned long long>(seeds.run.acc),
                static_cast<unsigned long long>(seeds.run.gyr),
                static_cast<unsigned long long>(seeds.run.mag),
                static_cast<unsigned long long>(seeds.run.osp),
                static_cast<unsigned long long>(seeds.run.oat),
                static_cast<unsigned long long>(seeds.run.tas),
                static_cast<unsigned long long>(seeds.run.aoa),
                static_cast<unsigned long long>(seeds.run.aos),
                static_cast<unsigned long long>(seeds.run.gnss));
    return kExitOk;
  }

  const std::size_t shown = std::min<std::size_t>(catalog.capacity(), 10);
  std::printf("# master=%llu capacity=%zu (showing %zu)\n",
              static_cast<unsigned long long>(catalog.master_seed), catalog.capacity(), shown);
  for (std::size_t i = 0; i < shown; ++i) {
    std::printf("%zu: aircraft=%llu flight=%llu\n", i,
                static_cast<unsigned long long>(catalog.aircraft_seeds[i]),
                static_cast<unsigned long long>(catalog.flight_seeds[i]));
  }
  return kExitOk;
}

int run_theory(const SingleAxisFlags& flags, double horizon, double step) {
  if (!(step > 0.0) || !(horizon >= step)) {
    throw sensim::ConfigError("theory table needs 0 < step <= horizon");
  }
  const sensim::SingleAxisSpec spec = flags.spec();
  std::printf("t_s,err_std,err_offset,err_drift,err_noise,"
              "int1_mean,int1_std,int1_offset,int1_drift,int1_noise,"
              "int2_mean,int2_std,int2_offset,int2_drift,int2_noise\n");
  for (double t = step; t <= horizon + 1e-9; t += step) {
    const auto e = sensim::theory_error_stats(spec, t);
    const auto f = sensim::theory_first_integral_stats(spec, flags.first_initial, t);
    const auto g = sensim::theory_second_integral_stats(spec, flags.first_initial,
                                                        flags.second_initial, t);
    std::printf("%.6g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g\n",
                t, e.stddev(), std::sqrt(e.offset_variance), std::sqrt(e.drift_variance),
                std::sqrt(e.noise_variance), f.mean, f.stddev(), std::sqrt(f.offset_variance),
                std::sqrt(f.drift_variance), std::sqrt(f.noise_variance), g.mean, g.stddev(),
                std::sqrt(g.offset_variance), std::sqrt(g.drift_variance),
                std::sqrt(g.noise_variance));
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic sensor-suite simulator for fixed-wing autonomous aircraft"};
  app.require_subcommand(1);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "turn a truth trajectory into sensor outputs");
  std::string config_path;
  std::string truth_path;
  std::string out_dir;
  std::optional<std::size_t> aircraft_index;
  std::optional<std::size_t> flight_index;
  simulate->add_option("--config", config_path, "JSON run configuration")->required();
  simulate->add_option("--truth", truth_path, "truth trajectory CSV")->required();
  simulate->add_option("--out", out_dir, "output directory")->required();
  simulate->add_option("--aircraft", aircraft_index, "catalog aircraft index override");
  simulate->add_option("--flight", flight_index, "catalog flight index override");

  // montecarlo
  auto* montecarlo =
      app.add_subcommand("montecarlo", "validate the single-axis error law against theory");
  SingleAxisFlags mc_flags;
  mc_flags.first_initial = 3.0;
  mc_flags.second_initial = 1.5;
  std::size_t runs = 50;
  double horizon = 1000.0;
  int checkpoints = 10;
  std::uint64_t mc_seed = 1;
  double confidence = 0.99;
  unsigned threads = 0;
  add_single_axis_flags(montecarlo, mc_flags);
  montecarlo->add_option("--runs", runs, "number of independent runs");
  montecarlo->add_option("--horizon", horizon, "simulated span per run [s]");
  montecarlo->add_option("--checkpoints", checkpoints, "number of evenly spaced checkpoints")
      ->check(CLI::PositiveNumber);
  montecarlo->add_option("--seed", mc_seed, "base seed for the run streams");
  montecarlo->add_option("--confidence", confidence, "two-sided confidence level");
  montecarlo->add_option("--threads", threads, "worker threads (0 = hardware)");

  // seeds
  auto* seeds = app.add_subcommand("seeds", "build, store or inspect a seed catalog");
  std::uint64_t master = 1;
  std::size_t capacity = 50;
  std::string catalog_path;
  std::string seeds_out;
  std::optional<std::size_t> seeds_aircraft;
  std::optional<std::size_t> seeds_flight;
  seeds->add_option("--master", master, "master seed for catalog generation");
  seeds->add_option("--capacity", capacity, "number of seed pairs");
  seeds->add_option("--catalog", catalog_path, "load an existing catalog file instead");
  seeds->add_option("--out", seeds_out, "write the catalog to this file");
  seeds->add_option("--aircraft", seeds_aircraft, "derive sensor seeds for this aircraft index");
  seeds->add_option("--flight", seeds_flight, "derive sensor seeds for this flight index");

  // theory
  auto* theory = app.add_subcommand("theory", "print closed-form moment tables for plotting");
  SingleAxisFlags theory_flags;
  double theory_horizon = 1000.0;
  double theory_step = 100.0;
  add_single_axis_flags(theory, theory_flags);
  theory->add_option("--horizon", theory_horizon, "last tabulated time [s]");
  theory->add_option("--step", theory_step, "table step [s]");

  try {
    app.parse(argc, argv);
    if (simulate->parsed()) {
      return run_simulate(config_path, truth_path, out_dir, aircraft_index, flight_index);
    }
    if (montecarlo->parsed()) {
      return run_montecarlo(mc_flags, runs, horizon, checkpoints, mc_seed, confidence, threads);
    }
    if (seeds->parsed()) {
      return run_seeds(master, capacity, catalog_path, seeds_out, seeds_aircraft, seeds_flight);
    }
    if (theory->parsed()) {
      return run_theory(theory_flags, theory_horizon, theory_step);
    }
    return kExitConfig;
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kExitOk : kExitConfig;
  } catch (const sensim::ConfigError& err) {
    std::fprintf(stderr, "configuration error: %s\n", err.what());
    return kExitConfig;
  } catch (const sensim::DataError& err) {
    std::fprintf(stderr, "data error: %s\n", err.what());
    return kExitData;
  } catch (const std::invalid_argument& err) {
    std::fprintf(stderr, "configuration error: %s\n", err.what());
    return kExitConfig;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 1;
  }
}
