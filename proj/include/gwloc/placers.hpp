#pragma once

#include <vector>

#include "gwloc/exact.hpp"
#include "gwloc/ga.hpp"
#include "gwloc/netgraph.hpp"
#include "gwloc/placement.hpp"
#include "gwloc/topogen.hpp"

namespace gwloc {

/// Clustering-seeded GA: t candidate cells per cluster, t^M initial chromosomes.
struct KgaConfig {
  int t = 4;
  int clustering_replications = 50;
  GaConfig ga{256, 50, 0.01};  // population_size is ignored; it is always t^M

  void validate(int m) const;
};

/// Anchor points for the fixed-position baseline. For m = 4 these are the
/// four rectangle corners on the half-radius circle, scaled from a 1000 m area.
std::vector<Point> baseline_anchors(double area_radius, int m);
/// Clusters (0-based, generation order) whose nearest cells become gateways
/// in the cluster scenario.
std::vector<int> baseline_clusters(int cluster_count, int m);

Placement baseline_place(const Topology& topo, const ConnectivityGraph& g, int m);
Placement kmeans_place(const Topology& topo, const ConnectivityGraph& g, int m, int replications, Rng& rng);
Placement kmedoids_place(const Topology& topo, const ConnectivityGraph& g, int m, int replications, Rng& rng);

/// The full cross product of one pick per candidate set. Picks that collide
/// leave fewer than m ones and are repaired.
std::vector<Chromosome> combination_population(int n, int m, const std::vector<std::vector<CellId>>& candidate_sets,
                                               Rng& rng);

Placement kga_place(const Topology& topo, const ConnectivityGraph& g, int m, const KgaConfig& cfg, Rng& rng);
Placement kmga_place(const Topology& topo, const ConnectivityGraph& g, int m, const KgaConfig& cfg, Rng& rng);

/// Per-method parameters; defaults follow the published simulation settings.
struct MethodConfigs {
  int kmeans_replications = 100;
  int kmedoids_replications = 100;
  GaConfig ga{300, 100, 0.01};
  KgaConfig kga{};
  KgaConfig kmga{};
  ExactOptions exact{};
};

struct MethodOutcome {
  Placement placement;
  bool certified_optimal = false;
};

/// Runs one placer. Exact runs that hit the node budget return the incumbent
/// with certified_optimal = false instead of throwing.
MethodOutcome run_method(Method method, const Topology& topo, const ConnectivityGraph& g, int m,
                         const MethodConfigs& cfg, Rng& rng);

}  // namespace gwloc
