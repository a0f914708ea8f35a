#include "gwloc/placers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "gwloc/clustering.hpp"

namespace gwloc {

namespace {

void check_m(const ConnectivityGraph& g, int m) {
  if (m < 1 || m > g.n) throw InvalidConfig(fmt::format("gateway count {} must lie in [1, {}]", m, g.n));
}

}  // namespace

void KgaConfig::validate(int m) const {
  if (t < 1) throw InvalidConfig("t must be >= 1");
  if (clustering_replications < 1) throw InvalidConfig("clustering replications must be >= 1");
  double size = std::pow(static_cast<double>(t), m);
  if (size > (1 << 20)) throw InvalidConfig(fmt::format("t^M = {}^{} is too large a population", t, m));
  GaConfig probe = ga;
  probe.population_size = 1;
  probe.validate();
}

std::vector<Point> baseline_anchors(double area_radius, int m) {
  if (m < 1) throw InvalidConfig("baseline needs m >= 1");
  const double scale = area_radius / 1000.0;
  if (m == 4) {
    return {{294 * scale, 405 * scale}, {-294 * scale, 405 * scale}, {-294 * scale, -405 * scale},
            {294 * scale, -405 * scale}};
  }
  const double ring = area_radius / 2.0;
  const double start = std::atan2(405.0, 294.0);
  std::vector<Point> anchors;
  for (int k = 0; k < m; ++k) {
    const double theta = start + 2.0 * std::numbers::pi * k / m;
    anchors.push_back({ring * std::cos(theta), ring * std::sin(theta)});
  }
  return anchors;
}

std::vector<int> baseline_clusters(int cluster_count, int m) {
  if (m > cluster_count)
    throw InvalidConfig(fmt::format("baseline needs at least {} clusters, topology has {}", m, cluster_count));
  if (cluster_count == 6 && m == 4) return {1, 2, 4, 5};
  std::vector<int> picks;
  for (int k = 0; k < m; ++k) picks.push_back(k * cluster_count / m);
  return picks;
}

Placement baseline_place(const Topology& topo, const ConnectivityGraph& g, int m) {
  check_m(g, m);
  std::vector<Point> targets;
  if (topo.config.scenario == Scenario::Cluster) {
    if (topo.centers.empty()) throw InvalidConfig("cluster baseline needs the cluster centers");
    for (int k : baseline_clusters(static_cast<int>(topo.centers.size()), m)) targets.push_back(topo.centers[k]);
  } else {
    targets = baseline_anchors(topo.config.area_radius, m);
  }
  return assign_to_gateways(g, snap_to_cells(topo.cells, targets));
}

Placement kmeans_place(const Topology& topo, const ConnectivityGraph& g, int m, int replications, Rng& rng) {
  check_m(g, m);
  const KMeansResult km = kmeans(topo.cells, m, replications, rng);
  return assign_to_gateways(g, snap_to_cells(topo.cells, km.centroids));
}

Placement kmedoids_place(const Topology& topo, const ConnectivityGraph& g, int m, int replications, Rng& rng) {
  check_m(g, m);
  const KMedoidsResult km = kmedoids(topo.cells, m, replications, rng);
  return assign_to_gateways(g, km.medoids);
}

std::vector<Chromosome> combination_population(int n, int m, const std::vector<std::vector<CellId>>& candidate_sets,
                                               Rng& rng) {
  std::size_t total = 1;
  for (const auto& set : candidate_sets) {
    if (set.empty()) throw InvalidConfig("empty candidate set");
    total *= set.size();
  }
  std::vector<Chromosome> population;
  population.reserve(total);
  std::vector<std::size_t> digit(candidate_sets.size(), 0);
  for (std::size_t c = 0; c < total; ++c) {
    Chromosome ch;
    ch.bits.assign(n, 0);
    for (std::size_t s = 0; s < candidate_sets.size(); ++s) ch.bits[candidate_sets[s][digit[s]]] = 1;
    repair_in_place(ch, m, rng);
    population.push_back(std::move(ch));
    // Mixed-radix increment, last set varies fastest.
    for (std::size_t s = candidate_sets.size(); s-- > 0;) {
      if (++digit[s] < candidate_sets[s].size()) break;
      digit[s] = 0;
    }
  }
  return population;
}

namespace {

Placement evolve_from_sets(const ConnectivityGraph& g, int m, const KgaConfig& cfg,
                           const std::vector<std::vector<CellId>>& sets, Rng& rng) {
  auto population = combination_population(g.n, m, sets, rng);
  GaConfig ga = cfg.ga;
  ga.population_size = static_cast<int>(population.size());
  const GaResult r = ga_evolve(std::move(population), g, m, ga, rng);
  return assign_to_gateways(g, r.best.gateways());
}

}  // namespace

Placement kga_place(const Topology& topo, const ConnectivityGraph& g, int m, const KgaConfig& cfg, Rng& rng) {
  check_m(g, m);
  cfg.validate(m);
  const KMeansResult km = kmeans(topo.cells, m, cfg.clustering_replications, rng);
  std::vector<std::vector<CellId>> sets;
  for (const Point& c : km.centroids) sets.push_back(nearest_cells(topo.cells, c, cfg.t));
  return evolve_from_sets(g, m, cfg, sets, rng);
}

Placement kmga_place(const Topology& topo, const ConnectivityGraph& g, int m, const KgaConfig& cfg, Rng& rng) {
  check_m(g, m);
  cfg.validate(m);
  const KMedoidsResult km = kmedoids(topo.cells, m, cfg.clustering_replications, rng);
  std::vector<std::vector<CellId>> sets;
  for (CellId medoid : km.medoids) {
    std::vector<CellId> set{medoid};
    for (CellId id : nearest_cells(topo.cells, topo.cells[medoid], cfg.t)) {
      if (static_cast<int>(set.size()) == cfg.t) break;
      if (id != medoid) set.push_back(id);
    }
    sets.push_back(std::move(set));
  }
  return evolve_from_sets(g, m, cfg, sets, rng);
}

MethodOutcome run_method(Method method, const Topology& topo, const ConnectivityGraph& g, int m,
                         const MethodConfigs& cfg, Rng& rng) {
  switch (method) {
    case Method::Baseline:
      return {baseline_place(topo, g, m)};
    case Method::KMeans:
      return {kmeans_place(topo, g, m, cfg.kmeans_replications, rng)};
    case Method::KMedoids:
      return {kmedoids_place(topo, g, m, cfg.kmedoids_replications, rng)};
    case Method::GA:
      return {ga_place(g, m, cfg.ga, rng)};
    case Method::KGA:
      return {kga_place(topo, g, m, cfg.kga, rng)};
    case Method::KMGA:
      return {kmga_place(topo, g, m, cfg.kmga, rng)};
    case Method::Exact:
      try {
        ExactResult r = exact_place(g, m, cfg.exact);
        return {std::move(r.placement), true};
      } catch (const BudgetExceeded& e) {
        return {e.incumbent().placement, false};
      }
  }
  throw InvalidConfig("unknown method");
}

}  // namespace gwloc
