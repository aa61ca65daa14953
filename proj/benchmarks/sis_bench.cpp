#include <benchmark/benchmark.h>

#include "sis/config.hpp"
#include "sis/ensemble.hpp"
#include "sis/exact.hpp"
#include "sis/integrators.hpp"
#include "sis/noise.hpp"

namespace {

void BM_SamplePath(benchmark::State& state) {
  const sis::TimeGrid grid(1.0, static_cast<std::size_t>(state.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sis::sample_path(grid, seed++));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SamplePath)->Arg(1 << 10)->Arg(1 << 16);

void BM_RefineBridge(benchmark::State& state) {
  const auto path = sis::sample_path(sis::TimeGrid(1.0, static_cast<std::size_t>(state.range(0))), 1);
  for (auto _ : state) benchmark::DoNotOptimize(sis::refine_bridge(path));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RefineBridge)->Arg(1 << 10)->Arg(1 << 16);

void BM_LogOddsEuler(benchmark::State& state) {
  const auto p = sis::reference_params();
  const auto path = sis::sample_path(sis::TimeGrid(1.0, static_cast<std::size_t>(state.range(0))), 1);
  for (auto _ : state) benchmark::DoNotOptimize(sis::logodds_euler(p, path));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LogOddsEuler)->Arg(1 << 10)->Arg(1 << 16);

void BM_StratonovichExact(benchmark::State& state) {
  const auto p = sis::reference_params();
  const auto path = sis::sample_path(sis::TimeGrid(1.0, static_cast<std::size_t>(state.range(0))), 1);
  for (auto _ : state) benchmark::DoNotOptimize(sis::stratonovich_exact(p, path));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_StratonovichExact)->Arg(1 << 10)->Arg(1 << 18);

void BM_WongZakaiExact(benchmark::State& state) {
  const auto p = sis::reference_params();
  const auto path = sis::sample_path(sis::TimeGrid(1.0, static_cast<std::size_t>(state.range(0))), 1);
  for (auto _ : state) benchmark::DoNotOptimize(sis::wong_zakai_exact(p, path));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_WongZakaiExact)->Arg(1 << 10)->Arg(1 << 16);

void BM_Ensemble(benchmark::State& state) {
  auto cfg = sis::default_config();
  cfg.n_paths = 64;
  cfg.cells = 1024;
  for (auto _ : state) benchmark::DoNotOptimize(sis::run_ensemble(cfg, static_cast<unsigned>(state.range(0))));
  state.SetItemsProcessed(state.iterations() * 64);
}
BENCHMARK(BM_Ensemble)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
