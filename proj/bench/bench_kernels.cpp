#include <benchmark/benchmark.h>

#include "sgembed/cayley_table.hpp"
#include "sgembed/families.hpp"
#include "sgembed/kernels.hpp"
#include "sgembed/search.hpp"

namespace {

using namespace sgembed;

const GeneratedTable& t4() {
  static GeneratedTable table = build_family(Family::full_transformation, 4);
  return table;
}

const GeneratedTable& t2() {
  static GeneratedTable table = build_family(Family::full_transformation, 2);
  return table;
}

const GeneratedTable& t3() {
  static GeneratedTable table = build_family(Family::full_transformation, 3);
  return table;
}

void BM_assoc_serial(benchmark::State& state) {
  const CayleyTable& table = t4().table;
  for (auto _ : state) {
    AssocCounterexample fail;
    benchmark::DoNotOptimize(kernels::assoc_serial(table, &fail));
  }
}
BENCHMARK(BM_assoc_serial)->Unit(benchmark::kMillisecond);

void BM_assoc_parallel(benchmark::State& state) {
  const CayleyTable& table = t4().table;
  for (auto _ : state) {
    AssocCounterexample fail;
    benchmark::DoNotOptimize(kernels::assoc_parallel(table, &fail, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_assoc_parallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_profiles_serial(benchmark::State& state) {
  const CayleyTable& table = t4().table;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::profiles_serial(table));
  }
}
BENCHMARK(BM_profiles_serial)->Unit(benchmark::kMillisecond);

void BM_profiles_parallel(benchmark::State& state) {
  const CayleyTable& table = t4().table;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::profiles_parallel(table, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_profiles_parallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_table_from_elements(benchmark::State& state) {
  GeneratedTable p3 = build_family(Family::partition, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        table_from_elements(p3.elements, p3.index_of, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_table_from_elements)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_embed_partition(benchmark::State& state) {
  const CayleyTable& src = t2().table;
  const CayleyTable& tgt = t3().table;
  for (auto _ : state) {
    SearchOptions options;
    options.limit = all_solutions;
    benchmark::DoNotOptimize(find_embeddings(src, tgt, options));
  }
}
BENCHMARK(BM_embed_partition)->Unit(benchmark::kMillisecond);

void BM_embed_no_partition(benchmark::State& state) {
  const CayleyTable& src = t2().table;
  const CayleyTable& tgt = t3().table;
  for (auto _ : state) {
    SearchOptions options;
    options.limit = all_solutions;
    options.use_partition = false;
    benchmark::DoNotOptimize(find_embeddings(src, tgt, options));
  }
}
BENCHMARK(BM_embed_no_partition)->Unit(benchmark::kMillisecond);

void BM_embed_parallel(benchmark::State& state) {
  const CayleyTable& src = t2().table;
  const CayleyTable& tgt = t3().table;
  for (auto _ : state) {
    SearchOptions options;
    options.limit = all_solutions;
    options.threads = static_cast<int>(state.range(0));
    benchmark::DoNotOptimize(find_embeddings(src, tgt, options));
  }
}
BENCHMARK(BM_embed_parallel)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
