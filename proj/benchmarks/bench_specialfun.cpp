#include <benchmark/benchmark.h>

#include "hotspots/specialfun.hpp"
#include "hotspots/zeros.hpp"

namespace {

void BM_BesselJ(benchmark::State& state) {
  const double nu = static_cast<double>(state.range(0));
  const hotspots::BesselOrder order(nu);
  double x = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hotspots::bessel_j(order, x));
    x = x < 150.0 ? x + 1.37 : 0.5;
  }
}
BENCHMARK(BM_BesselJ)->Arg(0)->Arg(10)->Arg(49)->Arg(99);

void BM_LogGamma(benchmark::State& state) {
  double x = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hotspots::log_gamma(x));
    x = x < 400.0 ? x + 0.77 : 0.5;
  }
}
BENCHMARK(BM_LogGamma);

void BM_FirstBesselZero(benchmark::State& state) {
  const double nu = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hotspots::first_bessel_zero(nu));
}
BENCHMARK(BM_FirstBesselZero)->Arg(0)->Arg(10)->Arg(99);

void BM_FirstPRoot(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hotspots::first_p_root(d));
}
BENCHMARK(BM_FirstPRoot)->Arg(2)->Arg(20)->Arg(200);

}  // namespace
