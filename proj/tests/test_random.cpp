#include "sensim/random.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <vector>

#include <gtest/gtest.h>

namespace {

using sensim::GaussianStream;
using sensim::SeedCatalog;
using sensim::SensorSeedSet;

TEST(SeedCatalog, BuildIsStableAcrossCalls) {
  const SeedCatalog a = SeedCatalog::build(1, 50);
  const SeedCatalog b = SeedCatalog::build(1, 50);
  ASSERT_EQ(a.capacity(), 50u);
  ASSERT_EQ(a.aircraft_seeds.size(), 50u);
  ASSERT_EQ(a.flight_seeds.size(), 50u);
  EXPECT_EQ(a.aircraft_seeds, b.aircraft_seeds);
  EXPECT_EQ(a.flight_seeds, b.flight_seeds);
}

TEST(SeedCatalog, SmallerCatalogIsPrefixOfLarger) {
  const SeedCatalog small = SeedCatalog::build(1, 1);
  const SeedCatalog large = SeedCatalog::build(1, 50);
  ASSERT_EQ(small.capacity(), 1u);
  EXPECT_EQ(small.aircraft_seeds[0], large.aircraft_seeds[0]);
  EXPECT_EQ(small.flight_seeds[0], large.flight_seeds[0]);

  const SeedCatalog mid = SeedCatalog::build(1, 20);
  for (std::size_t i = 0; i < mid.capacity(); ++i) {
    EXPECT_EQ(mid.aircraft_seeds[i], large.aircraft_seeds[i]);
    EXPECT_EQ(mid.flight_seeds[i], large.flight_seeds[i]);
  }
}

TEST(SeedCatalog, DifferentMasterSeedsDiffer) {
  const SeedCatalog a = SeedCatalog::build(7, 3);
  const SeedCatalog b = SeedCatalog::build(8, 3);
  bool any_difference = false;
  for (std::size_t i = 0; i < 3; ++i) {
    any_difference = any_difference || a.aircraft_seeds[i] != b.aircraft_seeds[i] ||
                     a.flight_seeds[i] != b.flight_seeds[i];
  }
  EXPECT_TRUE(any_difference);
}

TEST(SeedCatalog, ZeroCapacityRejected) {
  EXPECT_THROW(SeedCatalog::build(1, 0), std::invalid_argument);
}

TEST(SeedCatalog, SaveLoadRoundTrip) {
  const SeedCatalog catalog = SeedCatalog::build(42, 10);
  const auto path = std::filesystem::temp_directory_path() / "sensim_test_catalog.txt";
  catalog.save(path);
  const SeedCatalog loaded = SeedCatalog::load(path);
  EXPECT_EQ(loaded.master_seed, catalog.master_seed);
  EXPECT_EQ(loaded.aircraft_seeds, catalog.aircraft_seeds);
  EXPECT_EQ(loaded.flight_seeds, catalog.flight_seeds);
  std::filesystem::remove(path);
}

TEST(SensorSeedSet, DeriveIsDeterministic) {
  const SensorSeedSet a = SensorSeedSet::derive(5, 9);
  const SensorSeedSet b = SensorSeedSet::derive(5, 9);
  EXPECT_EQ(a.fixed.acc, b.fixed.acc);
  EXPECT_EQ(a.fixed.cam, b.fixed.cam);
  EXPECT_EQ(a.run.acc, b.run.acc);
  EXPECT_EQ(a.run.gnss, b.run.gnss);
}

TEST(SensorSeedSet, FlightSeedOnlyMovesRunSeeds) {
  const SensorSeedSet a = SensorSeedSet::derive(5, 9);
  const SensorSeedSet b = SensorSeedSet::derive(5, 10);
  EXPECT_EQ(a.fixed.acc, b.fixed.acc);
  EXPECT_EQ(a.fixed.gyr, b.fixed.gyr);
  EXPECT_EQ(a.fixed.mag, b.fixed.mag);
  EXPECT_EQ(a.fixed.plat, b.fixed.plat);
  EXPECT_EQ(a.fixed.cam, b.fixed.cam);
  EXPECT_NE(a.run.acc, b.run.acc);
}

TEST(SensorSeedSet, FixedAndRunSeedsDoNotCollideSystematically) {
  const SeedCatalog catalog = SeedCatalog::build(1, 50);
  int collisions = 0;
  for (std::size_t i = 0; i < catalog.capacity(); ++i) {
    const SensorSeedSet seeds =
        SensorSeedSet::derive(catalog.aircraft_seeds[i], catalog.flight_seeds[i]);
    if (seeds.fixed.acc == seeds.run.acc) ++collisions;
  }
  EXPECT_EQ(collisions, 0);
}

TEST(GaussianStream, SameSeedSameSequence) {
  GaussianStream a(123);
  GaussianStream b(123);
  for (int i = 0; i < 1000; ++i) {
    ASSERT_EQ(a.next(), b.next());
  }
  EXPECT_EQ(a.draws_emitted(), 1000u);
}

TEST(GaussianStream, DifferentSeedsDiverge) {
  GaussianStream a(123);
  GaussianStream b(124);
  bool any_difference = false;
  for (int i = 0; i < 1000; ++i) {
    any_difference = any_difference || a.next() != b.next();
  }
  EXPECT_TRUE(any_difference);
}

TEST(GaussianStream, MomentsMatchStandardNormal) {
  GaussianStream stream(2024);
  const int n = 1'000'000;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = stream.next();
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / n;
  const double variance = sum_sq / n - mean * mean;
  EXPECT_LT(std::abs(mean), 0.01);
  EXPECT_LT(std::abs(variance - 1.0), 0.02);
}

TEST(GaussianStream, Vec3ConsumesThreeDraws) {
  GaussianStream a(7);
  GaussianStream b(7);
  const Eigen::Vector3d v = a.next_vec3();
  EXPECT_EQ(v.x(), b.next());
  EXPECT_EQ(v.y(), b.next());
  EXPECT_EQ(v.z(), b.next());
  EXPECT_EQ(a.draws_emitted(), 3u);
}

}  // namespace
