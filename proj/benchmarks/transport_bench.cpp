#include <benchmark/benchmark.h>

#include "holonomy/monopole.hpp"

namespace {

using namespace holonomy;

void BM_PathTransportU1(benchmark::State& state) {
  MonopoleConfig config = make_config(Family::U1, 1, 2);
  Path loop = based_latitude_loop(config.cover, 1.1);
  TransportConfig cfg;
  cfg.steps = static_cast<int>(state.range(0));
  cfg.tolerance = 1e-12;
  for (auto _ : state) {
    try {
      benchmark::DoNotOptimize(
          path_transport(config.connection, Patch::North, loop, cfg));
    } catch (const NotConverged&) {
    }
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PathTransportU1)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void BM_SurfaceProductSU3(benchmark::State& state) {
  MonopoleConfig config = make_config(Family::SUnZn, 3, 1);
  MonopoleBigons bigons = monopole_bigons(config.cover);
  for (auto _ : state) {
    benchmark::DoNotOptimize(surface_product_fixed(
        config.connection, Patch::North, bigons.north,
        static_cast<int>(state.range(0))));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SurfaceProductSU3)->RangeMultiplier(2)->Range(16, 128)->Complexity();

void BM_FluxLiftSO3(benchmark::State& state) {
  MonopoleConfig config = make_config(Family::SO3, 3, 1);
  TransportConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(surface_holonomy_lift(
        config.connection, config.cover, config.covering, cfg));
  }
}
BENCHMARK(BM_FluxLiftSO3);

}  // namespace

BENCHMARK_MAIN();
