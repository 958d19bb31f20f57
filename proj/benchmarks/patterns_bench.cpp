#include <benchmark/benchmark.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "hama/patterns.hpp"

namespace {

using namespace hama::patterns;

std::vector<double> ramp(std::size_t n) {
  std::vector<double> xs(n);
  std::iota(xs.begin(), xs.end(), 0.0);
  return xs;
}

void BM_Map(benchmark::State& state) {
  const auto xs = ramp(static_cast<std::size_t>(state.range(0)));
  hama::WorkerPool pool(static_cast<std::size_t>(state.range(1)));
  const auto plan = PatternInvocation::of(PatternKind::map, pool.workers());
  for (auto _ : state) benchmark::DoNotOptimize(map(pool, xs, [](double x) { return std::sqrt(x) * 1.5; }, plan));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Map)->ArgsProduct({{1 << 12, 1 << 18}, {1, 2, 4}});

void BM_Reduce(benchmark::State& state) {
  const auto xs = ramp(static_cast<std::size_t>(state.range(0)));
  hama::WorkerPool pool(static_cast<std::size_t>(state.range(1)));
  const auto plan = PatternInvocation::of(PatternKind::reduce, pool.workers());
  const auto add = make_combiner<double>([](double a, double b) { return a + b; }, 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(reduce(pool, xs, add, plan));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Reduce)->ArgsProduct({{1 << 12, 1 << 18}, {1, 2, 4}});

void BM_Stencil(benchmark::State& state) {
  const auto xs = ramp(static_cast<std::size_t>(state.range(0)));
  hama::WorkerPool pool(static_cast<std::size_t>(state.range(1)));
  const auto plan = PatternInvocation::of(PatternKind::stencil, pool.workers());
  auto avg = [](std::span<const double> w) { return (w[0] + w[1] + w[2]) / 3.0; };
  for (auto _ : state) benchmark::DoNotOptimize(stencil(pool, xs, 1, avg, plan));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Stencil)->ArgsProduct({{1 << 12, 1 << 18}, {1, 2, 4}});

void BM_Farm(benchmark::State& state) {
  const auto xs = ramp(static_cast<std::size_t>(state.range(0)));
  const auto plan = PatternInvocation::of(PatternKind::farm, static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(farm(stream_from(xs), [](const double& x) { return std::exp(-x); }, plan));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Farm)->ArgsProduct({{1 << 10, 1 << 14}, {1, 2, 4}});

}  // namespace
