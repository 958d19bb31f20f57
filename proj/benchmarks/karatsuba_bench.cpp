#include <benchmark/benchmark.h>

#include "hama/bench.hpp"
#include "hama/karatsuba.hpp"

namespace {

void BM_Schoolbook(benchmark::State& state) {
  const auto pairs = hama::bench::generate_pairs(1, static_cast<std::size_t>(state.range(0)), 1 << 20, 1);
  for (auto _ : state) benchmark::DoNotOptimize(hama::schoolbook_multiply(pairs[0].first, pairs[0].second));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Schoolbook)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

void BM_Karatsuba(benchmark::State& state) {
  const auto variant = static_cast<hama::MultiplyVariant>(state.range(1));
  const auto pairs = hama::bench::generate_pairs(1, static_cast<std::size_t>(state.range(0)), 1 << 20, 1);
  hama::KaratsubaConfig cfg;
  cfg.workers = hama::WorkerPool::default_workers();
  hama::WorkerPool pool(cfg.workers);
  for (auto _ : state) benchmark::DoNotOptimize(hama::karatsuba_multiply(pairs[0].first, pairs[0].second, cfg, variant, pool));
  state.SetLabel(std::string(hama::to_string(variant)));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Karatsuba)->ArgsProduct({{256, 1024, 4096, 10000}, {0, 1, 2, 3}})->Unit(benchmark::kMicrosecond);

void BM_KaratsubaCutoff(benchmark::State& state) {
  const auto pairs = hama::bench::generate_pairs(1, 10000, 1 << 20, 1);
  hama::KaratsubaConfig cfg;
  cfg.base_cutoff = static_cast<std::size_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(hama::karatsuba_multiply(pairs[0].first, pairs[0].second, cfg, hama::MultiplyVariant::vectorized));
}
BENCHMARK(BM_KaratsubaCutoff)->RangeMultiplier(2)->Range(8, 256)->Unit(benchmark::kMillisecond);

void BM_Batch(benchmark::State& state) {
  const auto variant = static_cast<hama::MultiplyVariant>(state.range(0));
  const auto pairs = hama::bench::generate_pairs(32, 2000, 1 << 20, 2019);
  hama::KaratsubaConfig cfg;
  cfg.workers = hama::WorkerPool::default_workers();
  for (auto _ : state) benchmark::DoNotOptimize(hama::multiply_batch(pairs, cfg, variant));
  state.SetLabel(std::string(hama::to_string(variant)));
}
BENCHMARK(BM_Batch)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

}  // namespace
