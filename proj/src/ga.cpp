#include "gwloc/ga.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

namespace gwloc {

void GaConfig::validate() const {
  if (population_size < 1) throw InvalidConfig("GA population must be positive");
  if (generations < 0) throw InvalidConfig("GA generations must be non-negative");
  if (!(mutation_prob >= 0.0 && mutation_prob <= 1.0)) throw InvalidConfig("mutation probability must lie in [0, 1]");
}

int Chromosome::ones() const { return static_cast<int>(std::count(bits.begin(), bits.end(), 1)); }

std::vector<CellId> Chromosome::gateways() const {
  std::vector<CellId> out;
  for (CellId i = 0; i < static_cast<CellId>(bits.size()); ++i) {
    if (bits[i]) out.push_back(i);
  }
  return out;
}

Chromosome chromosome_from_gateways(int n, std::span<const CellId> gateways) {
  Chromosome ch;
  ch.bits.assign(n, 0);
  for (CellId gw : gateways) ch.bits.at(gw) = 1;
  return ch;
}

Chromosome random_chromosome(int n, int m, Rng& rng) {
  Chromosome ch;
  ch.bits.assign(n, 0);
  repair_in_place(ch, m, rng);
  return ch;
}

void repair_in_place(Chromosome& ch, int m, Rng& rng) {
  const int n = static_cast<int>(ch.bits.size());
  if (m < 0 || m > n) throw InvalidConfig(fmt::format("cannot repair to {} ones over {} genes", m, n));
  int ones = ch.ones();
  if (ones == m) return;
  // Flip `excess` randomly chosen genes currently equal to `from`.
  const std::uint8_t from = ones > m ? 1 : 0;
  int excess = std::abs(ones - m);
  std::vector<CellId> pool;
  for (CellId i = 0; i < n; ++i) {
    if (ch.bits[i] == from) pool.push_back(i);
  }
  for (int k = 0; k < excess; ++k) {
    std::uniform_int_distribution<int> pick(k, static_cast<int>(pool.size()) - 1);
    std::swap(pool[k], pool[pick(rng)]);
    ch.bits[pool[k]] = static_cast<std::uint8_t>(1 - from);
  }
}

Chromosome repair(Chromosome ch, int m, Rng& rng) {
  repair_in_place(ch, m, rng);
  return ch;
}

long chromosome_fitness(const ConnectivityGraph& g, const Chromosome& ch) {
  std::vector<int> scratch(g.n);
  const auto gws = ch.gateways();
  const long total = total_hops_to_gateways(g, gws, scratch);
  if (total < 0) throw NotConnected("chromosome leaves cells without a reachable gateway");
  return total;
}

void evaluate_population_serial(const ConnectivityGraph& g, std::span<const Chromosome> population,
                                std::span<long> fitness) {
  std::vector<int> scratch(g.n);
  std::vector<CellId> gws;
  for (std::size_t k = 0; k < population.size(); ++k) {
    gws = population[k].gateways();
    fitness[k] = total_hops_to_gateways(g, gws, scratch);
  }
  for (long f : fitness)
    if (f < 0) throw NotConnected("chromosome leaves cells without a reachable gateway");
}

void evaluate_population(const ConnectivityGraph& g, std::span<const Chromosome> population, std::span<long> fitness) {
  const auto count = static_cast<std::ptrdiff_t>(population.size());
#pragma omp parallel
  {
    std::vector<int> scratch(g.n);
    std::vector<CellId> gws;
#pragma omp for schedule(static)
    for (std::ptrdiff_t k = 0; k < count; ++k) {
      gws = population[k].gateways();
      fitness[k] = total_hops_to_gateways(g, gws, scratch);
    }
  }
  for (long f : fitness)
    if (f < 0) throw NotConnected("chromosome leaves cells without a reachable gateway");
}

namespace {

std::size_t roulette_pick(std::span<const double> cumulative, Rng& rng) {
  std::uniform_real_distribution<double> spin(0.0, cumulative.back());
  const double r = spin(rng);
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
  if (it == cumulative.end()) --it;
  return static_cast<std::size_t>(it - cumulative.begin());
}

void mutate(Chromosome& ch, double prob, Rng& rng) {
  if (prob <= 0.0) return;
  std::bernoulli_distribution flip(prob);
  for (auto& bit : ch.bits) {
    if (flip(rng)) bit ^= 1U;
  }
}

}  // namespace

GaResult ga_evolve(std::vector<Chromosome> population, const ConnectivityGraph& g, int m, const GaConfig& cfg,
                   Rng& rng, bool parallel) {
  cfg.validate();
  if (population.empty()) throw InvalidConfig("GA population is empty");
  const std::size_t pop = population.size();
  const int n = g.n;
  for (const auto& ch : population) {
    if (static_cast<int>(ch.bits.size()) != n || ch.ones() != m)
      throw InvalidConfig(fmt::format("initial chromosomes must have {} genes and {} ones", n, m));
  }

  auto evaluate = [&](std::span<const Chromosome> p, std::span<long> f) {
    if (parallel) {
      evaluate_population(g, p, f);
    } else {
      evaluate_population_serial(g, p, f);
    }
  };

  std::vector<long> fitness(pop);
  evaluate(population, fitness);

  GaResult result;
  auto track_best = [&]() {
    for (std::size_t k = 0; k < pop; ++k) {
      if (result.best.bits.empty() || fitness[k] < result.best_total) {
        result.best = population[k];
        result.best_total = fitness[k];
      }
    }
    result.best_history.push_back(result.best_total);
    return result.best_total == 0;
  };
  if (track_best()) {
    result.stopped_on_zero = true;
    return result;
  }

  std::vector<double> cumulative(pop);
  std::vector<std::size_t> parents(pop);
  std::vector<Chromosome> next(pop);
  for (int gen = 0; gen < cfg.generations; ++gen) {
    // Lower total hops means a heavier slice of the wheel; totals are > 0 here.
    double acc = 0.0;
    for (std::size_t k = 0; k < pop; ++k) {
      acc += 1.0 / static_cast<double>(fitness[k]);
      cumulative[k] = acc;
    }
    for (auto& p : parents) p = roulette_pick(cumulative, rng);

    std::size_t k = 0;
    for (; k + 1 < pop; k += 2) {
      const auto& a = population[parents[k]].bits;
      const auto& b = population[parents[k + 1]].bits;
      auto& c1 = next[k].bits;
      auto& c2 = next[k + 1].bits;
      c1.resize(n);
      c2.resize(n);
      // Cut between genes; with one gene the children are copies.
      int cut = 0;
      if (n > 1) cut = std::uniform_int_distribution<int>(1, n - 1)(rng);
      std::copy(a.begin(), a.begin() + cut, c1.begin());
      std::copy(b.begin() + cut, b.end(), c1.begin() + cut);
      std::copy(b.begin(), b.begin() + cut, c2.begin());
      std::copy(a.begin() + cut, a.end(), c2.begin() + cut);
      for (auto* child : {&next[k], &next[k + 1]}) {
        mutate(*child, cfg.mutation_prob, rng);
        repair_in_place(*child, m, rng);
      }
    }
    if (k < pop) {
      next[k] = population[parents[k]];
      mutate(next[k], cfg.mutation_prob, rng);
      repair_in_place(next[k], m, rng);
    }

    population.swap(next);
    evaluate(population, fitness);
    if (track_best()) {
      result.stopped_on_zero = true;
      return result;
    }
  }
  return result;
}

Placement ga_place(const ConnectivityGraph& g, int m, const GaConfig& cfg, Rng& rng) {
  cfg.validate();
  if (cfg.population_size % 2 != 0) throw InvalidConfig("standalone GA population must be even");
  if (m < 1 || m > g.n) throw InvalidConfig(fmt::format("gateway count {} must lie in [1, {}]", m, g.n));
  std::vector<Chromosome> population;
  population.reserve(cfg.population_size);
  for (int k = 0; k < cfg.population_size; ++k) population.push_back(random_chromosome(g.n, m, rng));
  const GaResult r = ga_evolve(std::move(population), g, m, cfg, rng);
  return assign_to_gateways(g, r.best.gateways());
}

}  // namespace gwloc
