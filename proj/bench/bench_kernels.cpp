// Parallel kernels against their serial references.
#include "felphase/classical_evolution.hpp"
#include "felphase/quantum_evolution.hpp"

#include <benchmark/benchmark.h>

#include <numbers>

using namespace felphase;

namespace {

const GaussianMomentum kBeam(0.0, 0.5);

ModelConfig model() {
  ModelConfig cfg;
  cfg.alpha = 3.0;
  return cfg;
}

void BM_WignerParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = default_grid(kBeam, 1.0, n, n);
  for (auto _ : state)
    benchmark::DoNotOptimize(evolve_wigner(kBeam, g, std::numbers::pi, model()));
}

void BM_WignerReference(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = default_grid(kBeam, 1.0, n, n);
  for (auto _ : state)
    benchmark::DoNotOptimize(evolve_wigner_reference(kBeam, g, std::numbers::pi, model()));
}

// bands solved once, then one time step: the per-frame cost in figure runs
void BM_WignerPropagatorStep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const WignerPropagator prop(kBeam, default_grid(kBeam, 1.0, n, n), model());
  for (auto _ : state)
    benchmark::DoNotOptimize(prop.evolve(std::numbers::pi));
}

void BM_ClassicalParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = default_grid(kBeam, 1.0, n, n);
  for (auto _ : state)
    benchmark::DoNotOptimize(evolve_classical(kBeam, g, std::numbers::pi, 1.0));
}

void BM_ClassicalReference(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = default_grid(kBeam, 1.0, n, n);
  for (auto _ : state)
    benchmark::DoNotOptimize(evolve_classical_reference(kBeam, g, std::numbers::pi, 1.0));
}

} // namespace

BENCHMARK(BM_WignerParallel)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WignerReference)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WignerPropagatorStep)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClassicalParallel)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClassicalReference)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
