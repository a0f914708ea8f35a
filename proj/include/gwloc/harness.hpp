#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gwloc/metrics.hpp"
#include "gwloc/placers.hpp"
#include "gwloc/topogen.hpp"

namespace gwloc {

struct ExperimentConfig {
  std::vector<Scenario> scenarios{Scenario::Uniform};
  std::vector<int> densities{310, 350, 390, 430, 470};
  int m = 4;
  int replications = 100;
  std::vector<Method> methods{Method::Baseline, Method::KMeans, Method::KMedoids,
                              Method::GA,       Method::KGA,    Method::KMGA};
  CapacityParams capacity{};
  std::uint64_t seed = 1;

  // Template for every generated topology; scenario, density and seed are overwritten.
  TopologyConfig topology{};
  double transmission_range = 200.0;
  // When set, the area radius for density N becomes radius * sqrt(N / reference_density),
  // keeping cells per unit area fixed for desk-scale runs.
  bool scale_radius = false;
  int reference_density = 310;
  int max_topology_attempts = 10000;

  MethodConfigs method_configs{};
  int jobs = 0;  // 0: OpenMP default
  // Off writes runtime_s = 0 so raw files are byte-reproducible.
  bool record_runtime = true;

  double radius_for(int density) const;
  void validate() const;
};

/// One row of the raw-record file.
struct Record {
  Scenario scenario = Scenario::Uniform;
  int density = 0;
  int replication = 0;
  Method method = Method::Baseline;
  double anh = 0.0;
  double bnc_gbps = 0.0;
  double runtime_s = 0.0;
  bool certified_optimal = false;
  std::uint64_t topology_checksum = 0;
  int n_cells = 0;
  int m = 0;
  long total_hops = 0;
};

struct Interval {
  double mean = 0.0;
  double low = 0.0;
  double high = 0.0;
};

/// Normal-approximation 95% interval: mean +- 1.96 s / sqrt(n). Needs n >= 2.
Interval confidence_interval(std::span<const double> samples);

struct MethodSummary {
  Method method = Method::Baseline;
  int density = 0;
  Scenario scenario = Scenario::Uniform;
  int samples = 0;
  Interval anh;
  Interval bnc;
  Interval runtime;
  std::optional<double> gap_vs_exact_pct;
  std::optional<double> runtime_saving_pct;
  int certified = 0;  // exact rows: replications proven optimal
};

struct ExperimentResult {
  std::vector<Record> records;
  std::vector<MethodSummary> summaries;
};

/// Raised when a replication fails; carries every record that did complete.
class ExperimentFailure : public Error {
 public:
  ExperimentFailure(const std::string& what, std::vector<Record> partial)
      : Error(what), partial_(std::move(partial)) {}
  const std::vector<Record>& partial_records() const { return partial_; }

 private:
  std::vector<Record> partial_;
};

/// Stream seed for a method on one replication. With no method it is the
/// topology seed, shared by every method on that replication.
std::uint64_t seed_schedule(std::uint64_t master, Scenario scenario, int density, int replication,
                            std::optional<Method> method = std::nullopt);
/// Seed for the attempt-th regeneration of a replication's topology.
std::uint64_t topology_seed(std::uint64_t master, Scenario scenario, int density, int replication, int attempt);

/// Generates topologies until one is fully connected.
Topology connected_topology(const ExperimentConfig& cfg, Scenario scenario, int density, int replication);

ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Aggregates records per (scenario, density, method) in first-seen order.
std::vector<MethodSummary> summarize(std::span<const Record> records);

// Raw records:  scenario,density,replication,method,anh,bnc_gbps,runtime_s,certified_optimal,topology_checksum,n_cells,m
void write_records(std::ostream& out, std::span<const Record> records);
std::vector<Record> read_records(std::istream& in);

// Summary: scenario,density,method,samples,anh_mean,anh_ci_low,anh_ci_high,bnc_mean,bnc_ci_low,bnc_ci_high,
//          runtime_mean,runtime_ci_low,runtime_ci_high,gap_vs_exact_pct,runtime_saving_pct,certified
void write_summary(std::ostream& out, std::span<const MethodSummary> rows);

// Series: scenario,method,density,mean,ci_low,ci_high
void write_anh_series(std::ostream& out, std::span<const MethodSummary> rows);
void write_bnc_series(std::ostream& out, std::span<const MethodSummary> rows);

/// Human-readable aligned table, one line per summary row.
void print_summary_table(std::ostream& out, std::span<const MethodSummary> rows);

}  // namespace gwloc
