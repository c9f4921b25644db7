#include <benchmark/benchmark.h>

#include <cmath>

#include "wavelab/functionals.hpp"
#include "wavelab/symbols.hpp"

using namespace wavelab;

static RealField bump(std::size_t n) {
  return RealField::from_function(PeriodicGrid(128.0, n), [](double x) { return std::exp(-0.01 * x * x); });
}

static void BM_RoundTrip(benchmark::State& state) {
  const auto u = bump(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(to_real(to_spectral(u)));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RoundTrip)->RangeMultiplier(4)->Range(256, 1 << 16)->Complexity();

static void BM_DiagonalApply(benchmark::State& state) {
  const auto u = bump(static_cast<std::size_t>(state.range(0)));
  const auto op = DiagonalOperator::from_symbol(u.grid(), whitham_symbol().function());
  std::vector<double> out(u.size());
  for (auto _ : state) {
    op.apply(u.values(), out);
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_DiagonalApply)->RangeMultiplier(4)->Range(256, 1 << 16);

static void BM_Gradient(benchmark::State& state) {
  const auto u = bump(static_cast<std::size_t>(state.range(0)));
  const WaveProblem prob(u.grid(), whitham_symbol(), NonlinearitySpec(1.0, 1.0), 1e-3, PenalizerSpec(1.0));
  std::vector<double> g(u.size());
  for (auto _ : state) {
    prob.gradient(u.values(), g);
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_Gradient)->RangeMultiplier(4)->Range(256, 1 << 16);

static void BM_KernelSample(benchmark::State& state) {
  const auto m = whitham_symbol();
  for (auto _ : state) benchmark::DoNotOptimize(kernel_sample(m, 160.0, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_KernelSample)->Arg(1 << 14)->Arg(1 << 18);
