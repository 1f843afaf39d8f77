#include <benchmark/benchmark.h>

#include <sstream>

#include "oasm/engine.hpp"
#include "oasm/runner.hpp"
#include "oasm/systolic.hpp"

using namespace oasm;

namespace {

void BM_engine_push(benchmark::State& state) {
  const int lp = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  io::StreamGen gen(42);
  const Pattern p(io::bench_alphabet(), gen.symbols(static_cast<std::size_t>(lp), 4), k);
  const auto t = gen.symbols(3104, 4);
  for (auto _ : state) {
    Engine engine(p, "bench");
    std::uint64_t count = 0;
    for (Symbol s : t) count += engine.push(s).size();
    count += engine.finalize().size();
    benchmark::DoNotOptimize(count);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(t.size()));
}
BENCHMARK(BM_engine_push)
    ->Args({5, 3})
    ->Args({7, 3})
    ->Args({10, 3})
    ->Args({15, 2})
    ->Args({15, 3})
    ->Args({15, 4})
    ->Args({15, 5});

void BM_simulate_core(benchmark::State& state) {
  const int lp = static_cast<int>(state.range(0));
  io::StreamGen gen(43);
  const Pattern p(io::bench_alphabet(), gen.symbols(static_cast<std::size_t>(lp), 4), 3);
  const auto t = gen.symbols(3104, 4);
  const systolic::CoreConfig cfg{16, 3, 5, systolic::Duration{10.0}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(systolic::simulate_core(p, t, cfg));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(t.size()));
}
BENCHMARK(BM_simulate_core)->Arg(5)->Arg(15);

void BM_msearch_workers(benchmark::State& state) {
  io::StreamGen gen(44);
  io::PatternSet set;
  for (int i = 0; i < 8; ++i)
    set.add("p" + std::to_string(i), Pattern(io::bench_alphabet(), gen.symbols(10, 4), 3));
  const auto data = gen.symbols(20000, 4);
  for (auto _ : state) {
    io::BufferSource source(data);
    std::ostringstream sink;
    io::OutputOptions opts;
    opts.line_buffered = false;
    benchmark::DoNotOptimize(
        io::run_msearch(set, source, static_cast<int>(state.range(0)), sink, opts));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(data.size()) * 8);
}
BENCHMARK(BM_msearch_workers)->Arg(1)->Arg(2)->Arg(4)->Arg(8);

}  // namespace
