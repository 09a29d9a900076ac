#include <benchmark/benchmark.h>

#include <cmath>

#include "fracinv/specfun.hpp"

namespace {

using namespace fracinv;

// z chosen to land in each tier: double series, asymptotic, MPFR series.
void BM_MittagLeffler(benchmark::State& state) {
  const double alpha = state.range(0) / 10.0;
  const double z = -static_cast<double>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(mittag_leffler({alpha, 1.0}, z));
}
BENCHMARK(BM_MittagLeffler)
    ->Args({5, 1})
    ->Args({5, 50})
    ->Args({8, 5})
    ->Args({3, 10})
    ->Args({15, 30});

void BM_MittagLefflerEvaluator(benchmark::State& state) {
  const MittagLeffler e({0.8, 1.0}, 2.0);
  double z = -0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(e(z));
    z = z < -1.9 ? -0.1 : z - 0.01;
  }
}
BENCHMARK(BM_MittagLefflerEvaluator);

void BM_GenMittagLeffler(benchmark::State& state) {
  const double alpha = state.range(0) / 10.0;
  const double m = 1.0 + 0.5 / alpha;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gen_mittag_leffler({alpha, m, m}, -M_PI * M_PI));
  }
}
BENCHMARK(BM_GenMittagLeffler)->Arg(9)->Arg(7)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_GenMittagLefflerTableBuild(benchmark::State& state) {
  const double alpha = state.range(0) / 10.0;
  const double m = 1.0 + 0.5 / alpha;
  for (auto _ : state) benchmark::DoNotOptimize(GenMittagLeffler({alpha, m, m}, M_PI * M_PI));
}
BENCHMARK(BM_GenMittagLefflerTableBuild)->Arg(5)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_GenMittagLefflerTabled(benchmark::State& state) {
  const GenMittagLeffler e({0.3, 1.0 + 0.5 / 0.3, 1.0 + 0.5 / 0.3}, M_PI * M_PI);
  double z = -1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(e(z));
    z = z < -9.0 ? -1.0 : z - 0.5;
  }
}
BENCHMARK(BM_GenMittagLefflerTabled)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
