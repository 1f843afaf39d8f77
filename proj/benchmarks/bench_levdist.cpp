#include <benchmark/benchmark.h>

#include "oasm/levdist.hpp"
#include "oasm/runner.hpp"

using namespace oasm;

namespace {

Pattern make_pattern(int lp, int k) {
  io::StreamGen gen(1234);
  return Pattern(io::bench_alphabet(), gen.symbols(static_cast<std::size_t>(lp), 4), k);
}

void BM_wagner_fischer(benchmark::State& state) {
  io::StreamGen gen(5);
  const auto a = gen.symbols(static_cast<std::size_t>(state.range(0)), 4);
  const auto b = gen.symbols(static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(levdist::wagner_fischer(a, b));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_wagner_fischer)->RangeMultiplier(2)->Range(8, 256);

void BM_window_row_wise(benchmark::State& state) {
  const int lp = static_cast<int>(state.range(0));
  const Pattern p = make_pattern(lp, 3);
  io::StreamGen gen(6);
  const auto window = gen.symbols(static_cast<std::size_t>(lp + 3), 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(levdist::window_distances(p, window, 0));
  }
}
BENCHMARK(BM_window_row_wise)->Arg(5)->Arg(10)->Arg(15)->Arg(31);

void BM_window_wavefront(benchmark::State& state) {
  const int lp = static_cast<int>(state.range(0));
  const Pattern p = make_pattern(lp, 3);
  io::StreamGen gen(6);
  const auto window = gen.symbols(static_cast<std::size_t>(lp + 3), 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(levdist::wavefront_distances(p, window, 0));
  }
}
BENCHMARK(BM_window_wavefront)->Arg(5)->Arg(10)->Arg(15)->Arg(31);

}  // namespace
