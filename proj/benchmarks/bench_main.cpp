#include <benchmark/benchmark.h>

#include "kreisslab/norms.hpp"
#include "kreisslab/symbols.hpp"
#include "kreisslab/torus.hpp"

using namespace kreisslab;

static void BM_SymbolPow(benchmark::State& state) {
  const auto T = symbols::mobius_symbol(0.5, 1e-15);
  for (auto _ : state) benchmark::DoNotOptimize(symbols::symbol_pow(T, state.range(0), 1e-12));
}
BENCHMARK(BM_SymbolPow)->RangeMultiplier(8)->Range(16, 4096)->Unit(benchmark::kMillisecond);

static void BM_HighamLower(benchmark::State& state) {
  const auto T = symbols::symbol_pow(symbols::mobius_symbol(0.5, 1e-15), 64, 1e-12);
  const auto window = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(norms::higham_lower(T, 4.0, window, 2, 0));
}
BENCHMARK(BM_HighamLower)->RangeMultiplier(4)->Range(64, 4096)->Unit(benchmark::kMillisecond);

static void BM_LpNorm(benchmark::State& state) {
  std::vector<cplx> c(static_cast<std::size_t>(state.range(0)));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = cplx(1.0 / (1.0 + k), 0.5 / (2.0 + k));
  const FourierSeries f(0, c);
  for (auto _ : state) benchmark::DoNotOptimize(torus::lp_norm(f, 3.0));
}
BENCHMARK(BM_LpNorm)->RangeMultiplier(8)->Range(64, 1 << 15);
BENCHMARK_MAIN();
