#include <benchmark/benchmark.h>

#include <cmath>

#include "fracinv/fracops.hpp"
#include "fracinv/inverse1.hpp"
#include "fracinv/inverse2.hpp"
#include "fracinv/legendre.hpp"

namespace {

using namespace fracinv;

void BM_GaussLegendreRule(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gauss_legendre_rule(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_GaussLegendreRule)->Range(16, 1024);

void BM_Clenshaw(benchmark::State& state) {
  std::vector<double> c(static_cast<std::size_t>(state.range(0)) + 1);
  for (std::size_t n = 0; n < c.size(); ++n) c[n] = 1.0 / (1.0 + n * n);
  double x = -0.99;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fl_synthesize(c, x));
    x = x > 0.99 ? -0.99 : x + 0.013;
  }
}
BENCHMARK(BM_Clenshaw)->Range(8, 512);

void BM_CaputoL1(benchmark::State& state) {
  const TimeGrid g{1.0, static_cast<std::size_t>(state.range(0))};
  const auto f = g.sample([](double t) { return std::sin(t) + t * t; });
  for (auto _ : state) benchmark::DoNotOptimize(caputo_deriv_num(f, 0.6, g, g.steps));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CaputoL1)->RangeMultiplier(4)->Range(256, 65536)->Complexity(benchmark::oN);

void BM_RlIntegral(benchmark::State& state) {
  const TimeGrid g{1.0, static_cast<std::size_t>(state.range(0))};
  const auto f = g.sample([](double t) { return std::exp(-t); });
  for (auto _ : state) benchmark::DoNotOptimize(rl_integral_num(f, 0.4, g, g.steps));
}
BENCHMARK(BM_RlIntegral)->RangeMultiplier(4)->Range(256, 65536);

void BM_SolveProblem1(benchmark::State& state) {
  Problem1Spec s;
  s.alpha = 0.6;
  s.v = [](double x) { return 0.5 * x * x * x; };
  s.w = [](double x) { return 1.0 + (3.0 * x * x - 1.0); };
  s.N = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_problem1(s));
}
BENCHMARK(BM_SolveProblem1)->Arg(8)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_EvalU(benchmark::State& state) {
  Problem1Spec s;
  s.alpha = 0.6;
  s.v = [](double) { return 0.0; };
  s.w = [](double x) { return std::exp(x); };
  s.N = 32;
  const Problem1Solution sol = solve_problem1(s);
  double t = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_U(sol, t, 0.3));
    t = t > 0.99 ? 0.01 : t + 0.01;
  }
}
BENCHMARK(BM_EvalU)->Unit(benchmark::kMicrosecond);

void BM_SolveProblem2(benchmark::State& state) {
  Problem2Spec s;
  s.alpha = state.range(0) / 10.0;
  s.beta = 0.5;
  s.phi = [](double) { return 0.0; };
  s.psi = [](double x) { return std::sin(M_PI * x); };
  s.K = 1;
  for (auto _ : state) benchmark::DoNotOptimize(solve_problem2(s));
}
BENCHMARK(BM_SolveProblem2)->Arg(9)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
