// Size ladder: wall-clock is reported by google-benchmark, never asserted.
#include <benchmark/benchmark.h>

#include "holant/bounds.hpp"
#include "holant/cluster.hpp"
#include "holant/mcmc.hpp"
#include "holant/polymer.hpp"

using namespace holant;

namespace {

FugacityVector half_bound(const MultiGraph& g) {
  double b = region_bounds(Family::holant_poly, {.delta = max_degree(g), .kappa = 1, .r1 = 1}).simple;
  return {1.0, 0.5 * b};
}

void BM_FptasCycle(benchmark::State& state) {
  auto g = cycle_graph(static_cast<int>(state.range(0)));
  auto pi = uniform_builtin(g, "matching");
  auto z = half_bound(g);
  int order = 0;
  for (auto _ : state) {
    auto r = approximate_holant_polynomial(g, pi, z, 0.01);
    order = r.order;
    benchmark::DoNotOptimize(r.value);
  }
  state.counters["m"] = order;
}
BENCHMARK(BM_FptasCycle)->RangeMultiplier(2)->Range(8, 32)->Unit(benchmark::kMillisecond);

void BM_FptasGrid(benchmark::State& state) {
  int side = static_cast<int>(state.range(0));
  auto g = grid_graph(side, side);
  auto pi = uniform_builtin(g, "matching");
  auto z = half_bound(g);
  for (auto _ : state) benchmark::DoNotOptimize(approximate_holant_polynomial(g, pi, z, 0.1).value);
  state.counters["edges"] = g.edge_count();
}
BENCHMARK(BM_FptasGrid)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

void BM_ConnectedSubgraphs(benchmark::State& state) {
  auto g = grid_graph(6, 6);
  int m = static_cast<int>(state.range(0));
  std::size_t count = 0;
  for (auto _ : state) {
    count = connected_edge_subgraphs(g, 14, m).size();
    benchmark::DoNotOptimize(count);
  }
  state.counters["subgraphs"] = static_cast<double>(count);
}
BENCHMARK(BM_ConnectedSubgraphs)->DenseRange(2, 8, 2);

void BM_ChainSteps(benchmark::State& state) {
  auto g = cycle_graph(static_cast<int>(state.range(0)));
  auto pi = uniform_builtin(g, "matching");
  double z = 0.9 * region_bounds(Family::mcmc_poly, {.delta = 2, .kappa = 1, .r1 = 1}).simple;
  PolymerChain chain(g, pi, {1.0, z}, min_sampling_tau(1, 2));
  Rng rng(1);
  ChainState s(g.vertex_count(), g.edge_count());
  for (auto _ : state) chain.step(s, rng);
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ChainSteps)->RangeMultiplier(4)->Range(8, 512);

void BM_FprasTriangle(benchmark::State& state) {
  auto g = cycle_graph(3);
  auto pi = uniform_builtin(g, "matching");
  double z = 0.9 * region_bounds(Family::mcmc_poly, {.delta = 2, .kappa = 1, .r1 = 1}).simple;
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(fpras_estimate(g, pi, {1.0, z}, 0.2, seed++).estimate);
}
BENCHMARK(BM_FprasTriangle)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
