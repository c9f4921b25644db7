#include <benchmark/benchmark.h>

#include "wavelab/scaling.hpp"

using namespace wavelab;

static void BM_SolveWhitham(benchmark::State& state) {
  SolveConfig c;
  c.period = 128.0;
  c.points = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve(c));
}
BENCHMARK(BM_SolveWhitham)->Arg(1024)->Arg(2048)->Unit(benchmark::kMillisecond);

static void BM_Continuation(benchmark::State& state) {
  SolveConfig c;
  c.period = 128.0;
  c.points = 2048;
  c.mu = 1e-2;
  const auto start = solve(c);
  for (auto _ : state) benchmark::DoNotOptimize(continue_in_mu(start, 1e-2 / std::sqrt(10.0), c));
}
BENCHMARK(BM_Continuation)->Unit(benchmark::kMillisecond);

static void BM_Sweep(benchmark::State& state) {
  SolveConfig c;
  c.period = 128.0;
  c.points = 2048;
  const auto ladder = half_decade_ladder(1e-2, 1e-4);
  for (auto _ : state) benchmark::DoNotOptimize(sweep_mu(c, ladder));
}
BENCHMARK(BM_Sweep)->Unit(benchmark::kMillisecond);

static void BM_JensenGamma(benchmark::State& state) {
  double q = 0.5;
  for (auto _ : state) benchmark::DoNotOptimize(jensen_gamma(q));
}
BENCHMARK(BM_JensenGamma);
BENCHMARK_MAIN();
