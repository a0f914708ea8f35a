// Parallel kernels against their serial references on paper-sized inputs.

#include <benchmark/benchmark.h>

#include <vector>

#include "gwloc/ga.hpp"
#include "gwloc/harness.hpp"
#include "gwloc/netgraph.hpp"

namespace {

gwloc::ConnectivityGraph paper_graph(int density) {
  gwloc::ExperimentConfig cfg;
  return gwloc::build_graph(gwloc::connected_topology(cfg, gwloc::Scenario::Uniform, density, 0));
}

std::vector<gwloc::Chromosome> random_population(int n, int m, int size) {
  gwloc::Rng rng(7);
  std::vector<gwloc::Chromosome> pop;
  for (int k = 0; k < size; ++k) pop.push_back(gwloc::random_chromosome(n, m, rng));
  return pop;
}

void BM_HopMatrixSerial(benchmark::State& state) {
  const auto g = paper_graph(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(gwloc::hop_matrix_serial(g));
}

void BM_HopMatrixParallel(benchmark::State& state) {
  const auto g = paper_graph(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(gwloc::hop_matrix(g));
}

void BM_PopulationFitnessSerial(benchmark::State& state) {
  const auto g = paper_graph(static_cast<int>(state.range(0)));
  const auto pop = random_population(g.n, 4, 256);
  std::vector<long> fitness(pop.size());
  for (auto _ : state) {
    gwloc::evaluate_population_serial(g, pop, fitness);
    benchmark::DoNotOptimize(fitness.data());
  }
}

void BM_PopulationFitnessParallel(benchmark::State& state) {
  const auto g = paper_graph(static_cast<int>(state.range(0)));
  const auto pop = random_population(g.n, 4, 256);
  std::vector<long> fitness(pop.size());
  for (auto _ : state) {
    gwloc::evaluate_population(g, pop, fitness);
    benchmark::DoNotOptimize(fitness.data());
  }
}

}  // namespace

BENCHMARK(BM_HopMatrixSerial)->Arg(310)->Arg(470);
BENCHMARK(BM_HopMatrixParallel)->Arg(310)->Arg(470);
BENCHMARK(BM_PopulationFitnessSerial)->Arg(310)->Arg(470);
BENCHMARK(BM_PopulationFitnessParallel)->Arg(310)->Arg(470);

BENCHMARK_MAIN();
