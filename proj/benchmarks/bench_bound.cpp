#include <benchmark/benchmark.h>

#include "hotspots/asymptotic.hpp"
#include "hotspots/bound.hpp"
#include "hotspots/ratio.hpp"

namespace {

void BM_OptimizeBound(benchmark::State& state) {
  hotspots::BoundQuery q;
  q.d = static_cast<int>(state.range(0));
  q.ratio = hotspots::ratio_upper_bound(q.d, hotspots::RatioKind::ClosedForm);
  q.vfunction = hotspots::VFunction::improved_vogt();
  for (auto _ : state) benchmark::DoNotOptimize(hotspots::optimize_bound(q));
}
BENCHMARK(BM_OptimizeBound)->Arg(2)->Arg(10)->Arg(200);

void BM_BoundTable(benchmark::State& state) {
  for (auto _ : state) {
    for (int d : {2, 3, 4, 10, 100}) {
      hotspots::BoundQuery q;
      q.d = d;
      q.ratio = hotspots::round_ratio_up(hotspots::ratio_upper_bound(d, hotspots::RatioKind::BesselExact));
      q.vfunction = hotspots::VFunction::improved_vogt();
      benchmark::DoNotOptimize(hotspots::optimize_bound(q));
    }
  }
}
BENCHMARK(BM_BoundTable)->Unit(benchmark::kMicrosecond);

void BM_AsymptoticBound(benchmark::State& state) {
  const hotspots::AsymptoticParams params;
  std::int64_t d = 100;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hotspots::asymptotic_bound(params, d));
    d = d <= 100'000'000 ? d * 3 : 100;
  }
}
BENCHMARK(BM_AsymptoticBound);

}  // namespace
