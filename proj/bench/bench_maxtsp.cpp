// Held-Karp serial vs. OpenMP layers, and the full pipeline at growing n
// with a cubic complexity fit.

#include <benchmark/benchmark.h>

#include "maxtsp/pipeline.hpp"
#include "maxtsp/tour.hpp"

namespace {

void BM_OracleSerial(benchmark::State& state) {
  const auto inst = maxtsp::generate_instance(static_cast<int>(state.range(0)), 100, 11);
  for (auto _ : state) benchmark::DoNotOptimize(maxtsp::oracle_opt(inst));
}
BENCHMARK(BM_OracleSerial)->Arg(9)->Arg(11)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_OracleParallel(benchmark::State& state) {
  const auto inst = maxtsp::generate_instance(static_cast<int>(state.range(0)), 100, 11);
  for (auto _ : state) benchmark::DoNotOptimize(maxtsp::oracle_opt_parallel(inst));
}
BENCHMARK(BM_OracleParallel)->Arg(9)->Arg(11)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_Pipeline(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto inst = maxtsp::generate_instance(n, 100, 23);
  for (auto _ : state) benchmark::DoNotOptimize(maxtsp::run_pipeline(inst));
  state.SetComplexityN(n);
}
BENCHMARK(BM_Pipeline)
    ->Arg(50)
    ->Arg(100)
    ->Arg(200)
    ->Iterations(1)
    ->Unit(benchmark::kSecond)
    ->Complexity(benchmark::oNCubed);

void BM_Batch(benchmark::State& state) {
  maxtsp::BatchOptions options;
  options.count = 100;
  options.parallel = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(maxtsp::run_batch(options));
}
BENCHMARK(BM_Batch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
