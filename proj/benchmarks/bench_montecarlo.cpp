#include <benchmark/benchmark.h>

#include "hotspots/montecarlo.hpp"

namespace {

void BM_SampleExitTimes(benchmark::State& state) {
  hotspots::SimConfig config;
  config.domain = hotspots::SimDomain::ball(static_cast<int>(state.range(0)), 1.0);
  config.start = config.domain.centre();
  config.n_paths = 1000;
  config.t_grid = {0.0, 1.0};
  config.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(hotspots::sample_exit_times(config));
  state.SetItemsProcessed(state.iterations() * config.n_paths);
}
BENCHMARK(BM_SampleExitTimes)->Arg(2)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_ClopperPearson(benchmark::State& state) {
  std::int64_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hotspots::clopper_pearson(k, 100000));
    k = (k + 9973) % 100001;
  }
}
BENCHMARK(BM_ClopperPearson);

}  // namespace
