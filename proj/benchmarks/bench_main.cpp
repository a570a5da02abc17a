#include <benchmark/benchmark.h>

#include "meandric/irreducible.hpp"
#include "meandric/meander.hpp"
#include "meandric/nc_partition.hpp"
#include "meandric/series.hpp"

using namespace meandric;

static void BM_EnumerateNc(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    std::size_t count = 0;
    for_each_nc(n, [&](const NcPartition&) { ++count; });
    benchmark::DoNotOptimize(count);
  }
  state.SetItemsProcessed(state.iterations() * catalan_number(n));
}
BENCHMARK(BM_EnumerateNc)->DenseRange(8, 12, 2);

static void BM_LoopCount(benchmark::State& state) {
  const auto all = enumerate_nc(6);
  for (auto _ : state) {
    int total = 0;
    for (const auto& a : all)
      for (const auto& b : all) total += loop_count_algebraic(a, b);
    benchmark::DoNotOptimize(total);
  }
  state.SetItemsProcessed(state.iterations() * all.size() * all.size());
}
BENCHMARK(BM_LoopCount);

static void BM_CountIrreducible(benchmark::State& state) {
  IrreducibleOptions options;
  options.r_limit = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_irreducible(static_cast<int>(state.range(0)), options));
  }
}
BENCHMARK(BM_CountIrreducible)
    ->Args({7, -1})
    ->Args({8, -1})
    ->Args({9, 4})
    ->Unit(benchmark::kMillisecond);

static void BM_FTransform(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  const auto table = build_irreducible_table(r);
  const int nab = std::max(2 * r - 2, 1);
  const auto cumulants = series_from_table(table, {4 * r + 4, r, nab, nab});
  for (auto _ : state) {
    benchmark::DoNotOptimize(f_transform(f_transform(cumulants)));
  }
}
BENCHMARK(BM_FTransform)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
