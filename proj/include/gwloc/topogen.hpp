#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gwloc/common.hpp"

namespace gwloc {

enum class Scenario { Uniform, Gaussian, Cluster };
enum class NodeCountMode { Fixed, Poisson };

std::string_view scenario_name(Scenario s);
/// Accepts "uniform"/"ud", "gaussian"/"gd", "cluster"/"cd" (case-insensitive).
Scenario parse_scenario(std::string_view name);

struct TopologyConfig {
  double area_radius = 1000.0;
  Scenario scenario = Scenario::Uniform;
  NodeCountMode node_count_mode = NodeCountMode::Fixed;
  int density = 310;  // N in Fixed mode, lambda in Poisson mode

  // Unset means the scenario default: 50 m (uniform, cluster background), 40 m (gaussian).
  std::optional<double> min_separation;
  double cluster_separation = 25.0;

  double gaussian_sigma_fraction = 0.40;

  int cluster_count = 6;
  std::optional<double> cluster_ring_radius;  // unset: area_radius / 2
  double cluster_radius = 100.0;
  std::optional<double> cluster_sigma;  // unset: cluster_radius / 3
  double cluster_fraction = 0.5;

  int max_attempts_per_cell = 10000;
  std::uint64_t seed = 0;

  double resolved_min_separation() const;
  double resolved_ring_radius() const { return cluster_ring_radius.value_or(area_radius / 2.0); }
  double resolved_cluster_sigma() const { return cluster_sigma.value_or(cluster_radius / 3.0); }

  /// Throws InvalidConfig on out-of-range fields.
  void validate() const;
};

/// Small-cell layout. Cell id is the index into `cells`.
struct Topology {
  std::vector<Point> cells;
  // Cluster index per cell for the clustered phase, -1 for background/uniform cells.
  std::vector<int> groups;
  // Cluster centers in generation order (cluster scenario only).
  std::vector<Point> centers;
  TopologyConfig config;

  int size() const { return static_cast<int>(cells.size()); }
};

int draw_node_count(const TopologyConfig& config, Rng& rng);

Topology generate_uniform(const TopologyConfig& config, Rng& rng);
Topology generate_gaussian(const TopologyConfig& config, Rng& rng);
Topology generate_cluster(const TopologyConfig& config, Rng& rng);

/// Centers on the ring, starting at a uniform random angle and stepping by
/// 360 / cluster_count degrees.
std::vector<Point> cluster_centers(const TopologyConfig& config, Rng& rng);
std::vector<Point> cluster_centers_at(const TopologyConfig& config, double first_angle_deg);

/// Dispatches on config.scenario with a stream seeded from config.seed.
Topology generate_topology(const TopologyConfig& config);

struct TopologyViolation {
  enum class Kind { Radius, Separation, Shape } kind;
  CellId first = -1;
  CellId second = -1;
  std::string message;
};

/// Minimum separation that applies to the pair (i, j).
double required_separation(const Topology& topo, CellId i, CellId j);

/// Returns the first violation found, or nullopt when the topology is valid.
std::optional<TopologyViolation> validate_topology(const Topology& topo);

/// FNV-1a over the coordinate bit patterns.
std::uint64_t topology_checksum(const Topology& topo);

}  // namespace gwloc
