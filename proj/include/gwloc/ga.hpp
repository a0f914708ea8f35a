#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gwloc/common.hpp"
#include "gwloc/netgraph.hpp"
#include "gwloc/placement.hpp"

namespace gwloc {

struct GaConfig {
  int population_size = 300;
  int generations = 100;
  double mutation_prob = 0.01;  // per gene

  void validate() const;
};

/// One bit per cell; a set bit marks a gateway.
struct Chromosome {
  std::vector<std::uint8_t> bits;

  int ones() const;
  std::vector<CellId> gateways() const;
  friend bool operator==(const Chromosome&, const Chromosome&) = default;
};

Chromosome chromosome_from_gateways(int n, std::span<const CellId> gateways);
/// M ones at uniformly random distinct positions.
Chromosome random_chromosome(int n, int m, Rng& rng);

/// Flips randomly chosen ones (or zeros) until exactly m bits are set.
void repair_in_place(Chromosome& ch, int m, Rng& rng);
Chromosome repair(Chromosome ch, int m, Rng& rng);

/// Total hops of the encoded gateway set; 0 means every cell is a gateway.
/// Throws NotConnected if a cell cannot reach any gateway.
long chromosome_fitness(const ConnectivityGraph& g, const Chromosome& ch);

/// Fitness of every chromosome, spread over OpenMP threads. Results land at
/// their population index so the output matches the serial version exactly.
void evaluate_population(const ConnectivityGraph& g, std::span<const Chromosome> population, std::span<long> fitness);
void evaluate_population_serial(const ConnectivityGraph& g, std::span<const Chromosome> population,
                                std::span<long> fitness);

struct GaResult {
  Chromosome best;
  long best_total = 0;
  // Best-ever total hops after the initial population (index 0) and after each generation.
  std::vector<long> best_history;
  bool stopped_on_zero = false;
};

/// Roulette selection on 1/ANH, single-point crossover on every pair,
/// per-gene mutation, repair, generational replacement. The best chromosome
/// ever seen is tracked outside the population. Population size is taken from
/// `population`; an odd leftover parent passes through mutation only.
GaResult ga_evolve(std::vector<Chromosome> population, const ConnectivityGraph& g, int m, const GaConfig& cfg,
                   Rng& rng, bool parallel = true);

/// Standalone GA from a random feasible population of cfg.population_size.
Placement ga_place(const ConnectivityGraph& g, int m, const GaConfig& cfg, Rng& rng);

}  // namespace gwloc
