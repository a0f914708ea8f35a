#include <doctest.h>

#include <map>
#include <sstream>
#include <unordered_set>

#include "gwloc/harness.hpp"
#include "gwloc/metrics.hpp"

using namespace gwloc;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.densities = {50};
  cfg.replications = 4;
  cfg.scale_radius = true;
  cfg.methods = {Method::Baseline, Method::KMeans, Method::KGA, Method::Exact};
  cfg.method_configs.kmeans_replications = 5;
  cfg.method_configs.kga.clustering_replications = 5;
  cfg.method_configs.kga.ga.generations = 10;
  cfg.record_runtime = false;
  cfg.seed = 42;
  return cfg;
}

}  // namespace

TEST_CASE("confidence_interval") {
  SUBCASE("constant samples") {
    const std::vector<double> s{2, 2, 2, 2};
    const auto ci = confidence_interval(s);
    CHECK(ci.mean == 2.0);
    CHECK(ci.low == 2.0);
    CHECK(ci.high == 2.0);
  }
  SUBCASE("two samples") {
    const std::vector<double> s{0, 4};
    const auto ci = confidence_interval(s);
    CHECK(ci.mean == doctest::Approx(2.0));
    CHECK(ci.low == doctest::Approx(2.0 - 1.96 * std::sqrt(8.0) / std::sqrt(2.0)));
    CHECK(ci.high == doctest::Approx(2.0 + 3.92));
  }
  SUBCASE("too few samples") {
    const std::vector<double> s{1.0};
    CHECK_THROWS_AS(confidence_interval(s), TooFewSamples);
  }
}

TEST_CASE("seed_schedule") {
  CHECK(seed_schedule(1, Scenario::Uniform, 310, 0) == seed_schedule(1, Scenario::Uniform, 310, 0));
  CHECK(seed_schedule(1, Scenario::Uniform, 310, 0) != seed_schedule(1, Scenario::Uniform, 310, 1));
  CHECK(seed_schedule(1, Scenario::Uniform, 310, 0, Method::KGA) !=
        seed_schedule(1, Scenario::Uniform, 310, 0, Method::GA));
  std::unordered_set<std::uint64_t> seen;
  int collisions = 0;
  for (int sc = 0; sc < 3; ++sc)
    for (int density : {310, 350, 390, 430})
      for (int rep = 0; rep < 83334; ++rep)
        collisions += !seen.insert(seed_schedule(7, static_cast<Scenario>(sc), density, rep)).second;
  CHECK(seen.size() >= 1000000);
  CHECK(collisions == 0);
}

TEST_CASE("run_experiment") {
  const auto cfg = small_config();
  const auto result = run_experiment(cfg);
  REQUIRE(result.records.size() == 16);

  SUBCASE("methods share each replication's topology") {
    std::map<int, std::uint64_t> checksum;
    for (const auto& r : result.records) {
      auto [it, fresh] = checksum.emplace(r.replication, r.topology_checksum);
      CHECK(it->second == r.topology_checksum);
    }
    CHECK(checksum.size() == 4);
  }
  SUBCASE("capacity follows from the stored anh") {
    for (const auto& r : result.records) {
      const double expected = bnc(r.anh, r.n_cells, r.m, cfg.capacity).capacity;
      CHECK(std::abs(r.bnc_gbps - expected) <= 1e-12 * expected);
    }
  }
  SUBCASE("summaries") {
    REQUIRE(result.summaries.size() == 4);
    for (const auto& s : result.summaries) {
      CHECK(s.anh.low <= s.anh.mean);
      CHECK(s.anh.mean <= s.anh.high);
      CHECK(s.bnc.low <= s.bnc.high);
      if (s.method != Method::Exact) {
        REQUIRE(s.gap_vs_exact_pct.has_value());
        CHECK(*s.gap_vs_exact_pct >= 0.0);
      } else {
        CHECK(s.certified == 4);
      }
    }
  }
  SUBCASE("raw records round trip") {
    std::stringstream buf;
    write_records(buf, result.records);
    const auto back = read_records(buf);
    REQUIRE(back.size() == result.records.size());
    std::stringstream again;
    write_records(again, back);
    std::stringstream first;
    write_records(first, result.records);
    CHECK(again.str() == first.str());
  }
  SUBCASE("worker count does not change the output") {
    auto serial = cfg;
    serial.jobs = 1;
    auto wide = cfg;
    wide.jobs = 4;
    std::stringstream a, b;
    write_records(a, run_experiment(serial).records);
    write_records(b, run_experiment(wide).records);
    CHECK(a.str() == b.str());
  }
}

TEST_CASE("config validation") {
  auto cfg = small_config();
  cfg.densities = {4};
  CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
  cfg = small_config();
  cfg.replications = 1;
  CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
  cfg = small_config();
  CHECK(cfg.radius_for(310) == doctest::Approx(1000.0));
  CHECK(cfg.radius_for(155) == doctest::Approx(1000.0 * std::sqrt(0.5)));
}

TEST_CASE("connected_topology is valid and connected") {
  auto cfg = small_config();
  for (Scenario s : {Scenario::Uniform, Scenario::Gaussian, Scenario::Cluster}) {
    for (int rep = 0; rep < 3; ++rep) {
      const auto t = connected_topology(cfg, s, 120, rep);
      CHECK_FALSE(validate_topology(t).has_value());
      CHECK(is_fully_connected(build_graph(t, cfg.transmission_range)));
    }
  }
}
