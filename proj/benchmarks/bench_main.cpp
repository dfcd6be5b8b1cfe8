#include <benchmark/benchmark.h>

#include <cmath>

#include "fractosc/fractosc.hpp"

using namespace fractosc;

static void BM_RlIntegral(benchmark::State& state) {
  const Grid g(5.0, static_cast<std::size_t>(state.range(0)));
  const auto u = SampledFn::sample(g, [](double t) { return std::sin(t); });
  for (auto _ : state) benchmark::DoNotOptimize(rl_integral(u, 0.5));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RlIntegral)->RangeMultiplier(2)->Range(1 << 10, 1 << 14)->Complexity(benchmark::oNSquared);

static void BM_CaputoL1(benchmark::State& state) {
  const Grid g(5.0, static_cast<std::size_t>(state.range(0)));
  const auto u = SampledFn::sample(g, [](double t) { return std::cos(t); });
  for (auto _ : state) benchmark::DoNotOptimize(caputo_l1(u, 0.5));
}
BENCHMARK(BM_CaputoL1)->RangeMultiplier(2)->Range(1 << 10, 1 << 14);

static void BM_SolvePece(benchmark::State& state) {
  MultiTermProblem p;
  p.orders = {1.0 / 3.0, 0.5};
  p.coeffs = {2.0};
  p.rhs = [](double t, double x) { return -x - 0.5 * std::sin(t) * x * x * x; };
  p.ic.x_derivs = {1.0};
  const SolverConfig cfg(Grid(10.0, static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(solve_pece(p, cfg));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolvePece)->RangeMultiplier(2)->Range(1 << 10, 1 << 14)->Complexity(benchmark::oNSquared);

static void BM_GEval(benchmark::State& state) {
  const KernelParams p{Kappa::One, 2.0 / 3.0, 0.5, 2.0, 1.0};
  const TalbotConfig cfg{static_cast<int>(state.range(0)), 1.0};
  double t = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(g_eval(p, t, cfg));
    t = t < 100.0 ? t * 1.01 : 0.01;
  }
}
BENCHMARK(BM_GEval)->Arg(48)->Arg(96);
BENCHMARK_MAIN();
