#include "gwloc/topogen.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace gwloc {

std::string_view scenario_name(Scenario s) {
  switch (s) {
    case Scenario::Uniform:
      return "uniform";
    case Scenario::Gaussian:
      return "gaussian";
    case Scenario::Cluster:
      return "cluster";
  }
  return "unknown";
}

Scenario parse_scenario(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "uniform" || lower == "ud") return Scenario::Uniform;
  if (lower == "gaussian" || lower == "gd") return Scenario::Gaussian;
  if (lower == "cluster" || lower == "cd") return Scenario::Cluster;
  throw InvalidConfig(fmt::format("unknown scenario '{}'", name));
}

double TopologyConfig::resolved_min_separation() const {
  if (min_separation) return *min_separation;
  return scenario == Scenario::Gaussian ? 40.0 : 50.0;
}

void TopologyConfig::validate() const {
  if (!(area_radius > 0.0)) throw InvalidConfig("area_radius must be positive");
  if (density < 1) throw InvalidConfig("density must be >= 1");
  if (resolved_min_separation() < 0.0 || cluster_separation < 0.0)
    throw InvalidConfig("separations must be non-negative");
  if (!(gaussian_sigma_fraction > 0.0)) throw InvalidConfig("gaussian_sigma_fraction must be positive");
  if (cluster_count < 1) throw InvalidConfig("cluster_count must be >= 1");
  if (!(cluster_fraction > 0.0 && cluster_fraction < 1.0))
    throw InvalidConfig("cluster_fraction must lie in (0, 1)");
  if (!(cluster_radius > 0.0)) throw InvalidConfig("cluster_radius must be positive");
  if (!(resolved_cluster_sigma() > 0.0)) throw InvalidConfig("cluster_sigma must be positive");
  if (resolved_ring_radius() < 0.0 || resolved_ring_radius() > area_radius)
    throw InvalidConfig("cluster ring must lie inside the service area");
  if (max_attempts_per_cell < 1) throw InvalidConfig("max_attempts_per_cell must be >= 1");
}

int draw_node_count(const TopologyConfig& config, Rng& rng) {
  if (config.node_count_mode == NodeCountMode::Fixed) return config.density;
  std::poisson_distribution<int> poisson(static_cast<double>(config.density));
  return poisson(rng);
}

namespace {

bool inside_disc(const Point& p, double radius) { return p.x * p.x + p.y * p.y <= radius * radius; }

// Accepts a candidate only if it keeps `sep` from every cell in [begin, end).
bool far_enough(const std::vector<Point>& cells, std::size_t begin, std::size_t end, const Point& p,
                double sep) {
  const double sep2 = sep * sep;
  for (std::size_t k = begin; k < end; ++k) {
    if (squared_distance(cells[k], p) < sep2) return false;
  }
  return true;
}

Point uniform_in_disc(double radius, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (;;) {
    const double r = radius * std::sqrt(unit(rng));
    const double theta = 2.0 * std::numbers::pi * unit(rng);
    Point p{r * std::cos(theta), r * std::sin(theta)};
    // cos/sin rounding can push r == radius a hair outside.
    if (inside_disc(p, radius)) return p;
  }
}

[[noreturn]] void exhausted(const TopologyConfig& config, std::size_t placed, int target) {
  throw PlacementExhausted(fmt::format(
      "{} scenario: could not place cell {} of {} within {} attempts (radius={}, separation={})",
      scenario_name(config.scenario), placed, target, config.max_attempts_per_cell, config.area_radius,
      config.resolved_min_separation()));
}

template <class Sampler>
void dart_throw(Topology& topo, int count, std::size_t check_from, double sep, Sampler&& sample) {
  const auto& config = topo.config;
  for (int placed = 0; placed < count; ++placed) {
    int attempts = 0;
    for (;;) {
      if (attempts++ >= config.max_attempts_per_cell) exhausted(config, topo.cells.size(), count);
      const Point p = sample();
      if (far_enough(topo.cells, check_from, topo.cells.size(), p, sep)) {
        topo.cells.push_back(p);
        break;
      }
    }
  }
}

void self_check(const Topology& topo) {
  if (auto v = validate_topology(topo)) throw Error("generator produced invalid topology: " + v->message);
}

}  // namespace

Topology generate_uniform(const TopologyConfig& config, Rng& rng) {
  config.validate();
  Topology topo;
  topo.config = config;
  const int n = draw_node_count(config, rng);
  topo.cells.reserve(n);
  dart_throw(topo, n, 0, config.resolved_min_separation(),
             [&] { return uniform_in_disc(config.area_radius, rng); });
  topo.groups.assign(topo.cells.size(), -1);
  self_check(topo);
  return topo;
}

Topology generate_gaussian(const TopologyConfig& config, Rng& rng) {
  config.validate();
  Topology topo;
  topo.config = config;
  const int n = draw_node_count(config, rng);
  topo.cells.reserve(n);
  std::normal_distribution<double> normal(0.0, config.gaussian_sigma_fraction * config.area_radius);
  dart_throw(topo, n, 0, config.resolved_min_separation(), [&] {
    for (;;) {
      Point p{normal(rng), normal(rng)};
      if (inside_disc(p, config.area_radius)) return p;
    }
  });
  topo.groups.assign(topo.cells.size(), -1);
  self_check(topo);
  return topo;
}

std::vector<Point> cluster_centers_at(const TopologyConfig& config, double first_angle_deg) {
  const double ring = config.resolved_ring_radius();
  const double step = 360.0 / config.cluster_count;
  std::vector<Point> centers;
  centers.reserve(config.cluster_count);
  for (int k = 0; k < config.cluster_count; ++k) {
    const double theta = (first_angle_deg + step * k) * std::numbers::pi / 180.0;
    centers.push_back({ring * std::cos(theta), ring * std::sin(theta)});
  }
  return centers;
}

std::vector<Point> cluster_centers(const TopologyConfig& config, Rng& rng) {
  std::uniform_real_distribution<double> angle(0.0, 360.0);
  return cluster_centers_at(config, angle(rng));
}

Topology generate_cluster(const TopologyConfig& config, Rng& rng) {
  config.validate();
  Topology topo;
  topo.config = config;
  const int n = draw_node_count(config, rng);
  topo.centers = cluster_centers(config, rng);

  const int clustered = static_cast<int>(std::lround(config.cluster_fraction * n));
  std::vector<int> sizes(config.cluster_count, 0);
  std::uniform_int_distribution<int> pick(0, config.cluster_count - 1);
  for (int i = 0; i < clustered; ++i) ++sizes[pick(rng)];

  topo.cells.reserve(n);
  topo.groups.reserve(n);
  std::normal_distribution<double> spread(0.0, config.resolved_cluster_sigma());
  const double r2 = config.cluster_radius * config.cluster_radius;
  for (int k = 0; k < config.cluster_count; ++k) {
    const Point c = topo.centers[k];
    dart_throw(topo, sizes[k], 0, config.cluster_separation, [&] {
      for (;;) {
        Point p{c.x + spread(rng), c.y + spread(rng)};
        if (squared_distance(p, c) <= r2 && inside_disc(p, config.area_radius)) return p;
      }
    });
    topo.groups.resize(topo.cells.size(), k);
  }

  dart_throw(topo, n - clustered, 0, config.resolved_min_separation(),
             [&] { return uniform_in_disc(config.area_radius, rng); });
  topo.groups.resize(topo.cells.size(), -1);
  self_check(topo);
  return topo;
}

Topology generate_topology(const TopologyConfig& config) {
  Rng rng(config.seed);
  switch (config.scenario) {
    case Scenario::Uniform:
      return generate_uniform(config, rng);
    case Scenario::Gaussian:
      return generate_gaussian(config, rng);
    case Scenario::Cluster:
      return generate_cluster(config, rng);
  }
  throw InvalidConfig("unknown scenario");
}

double required_separation(const Topology& topo, CellId i, CellId j) {
  if (topo.config.scenario == Scenario::Cluster && topo.groups[i] >= 0 && topo.groups[j] >= 0)
    return topo.config.cluster_separation;
  return topo.config.resolved_min_separation();
}

std::optional<TopologyViolation> validate_topology(const Topology& topo) {
  const int n = topo.size();
  if (static_cast<int>(topo.groups.size()) != n) {
    return TopologyViolation{TopologyViolation::Kind::Shape, -1, -1,
                             fmt::format("group labels ({}) do not match cell count ({})",
                                         topo.groups.size(), n)};
  }
  const double radius = topo.config.area_radius;
  for (CellId i = 0; i < n; ++i) {
    if (!inside_disc(topo.cells[i], radius)) {
      return TopologyViolation{TopologyViolation::Kind::Radius, i, -1,
                               fmt::format("cell {} at ({}, {}) lies outside radius {}", i,
                                           topo.cells[i].x, topo.cells[i].y, radius)};
    }
  }
  for (CellId i = 0; i < n; ++i) {
    for (CellId j = i + 1; j < n; ++j) {
      const double sep = required_separation(topo, i, j);
      const double d2 = squared_distance(topo.cells[i], topo.cells[j]);
      if (d2 < sep * sep) {
        return TopologyViolation{TopologyViolation::Kind::Separation, i, j,
                                 fmt::format("cells {} and {} are {:.3f} m apart (minimum {})", i, j,
                                             std::sqrt(d2), sep)};
      }
    }
  }
  return std::nullopt;
}

std::uint64_t topology_checksum(const Topology& topo) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t word) {
    for (int b = 0; b < 8; ++b) {
      h ^= (word >> (8 * b)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  for (const Point& p : topo.cells) {
    mix(std::bit_cast<std::uint64_t>(p.x));
    mix(std::bit_cast<std::uint64_t>(p.y));
  }
  return h;
}

}  // namespace gwloc
