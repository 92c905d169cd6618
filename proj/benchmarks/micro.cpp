#include <benchmark/benchmark.h>

#include "kpotts/expansion.hpp"
#include "kpotts/generators.hpp"
#include "kpotts/kovtun.hpp"
#include "kpotts/ksubmodular.hpp"

namespace {

kpotts::PottsInstance stereo(int side, kpotts::Label k) {
  kpotts::StereoSpec spec;
  spec.width = side;
  spec.height = side;
  spec.labels = k;
  spec.noise = 8;
  spec.window = 5;
  spec.lambda = 2000;
  return kpotts::generate_stereo(7, spec).file.instance;
}

void BM_NaiveKovtun(benchmark::State& state) {
  const auto inst = stereo(static_cast<int>(state.range(0)), static_cast<kpotts::Label>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(kpotts::naive_kovtun(inst));
}

void BM_FastKovtun(benchmark::State& state) {
  const auto inst = stereo(static_cast<int>(state.range(0)), static_cast<kpotts::Label>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(kpotts::fast_kovtun(inst));
}

void BM_Relaxation(benchmark::State& state) {
  const auto inst = kpotts::scale_costs(
      stereo(static_cast<int>(state.range(0)), static_cast<kpotts::Label>(state.range(1))), 2);
  const auto rel = kpotts::build_relaxation(inst);
  for (auto _ : state) benchmark::DoNotOptimize(kpotts::minimize_relaxation(rel));
}

void BM_FullPipeline(benchmark::State& state) {
  const auto inst = stereo(static_cast<int>(state.range(0)), static_cast<kpotts::Label>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(kpotts::full_pipeline(inst));
}

void BM_ExpansionOnly(benchmark::State& state) {
  const auto inst = stereo(static_cast<int>(state.range(0)), static_cast<kpotts::Label>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(kpotts::expansion_only(inst));
}

void label_sweep(benchmark::internal::Benchmark* b) {
  for (int k : {4, 8, 16, 32}) b->Args({64, k});
  b->Unit(benchmark::kMillisecond);
}

}  // namespace

BENCHMARK(BM_NaiveKovtun)->Apply(label_sweep);
BENCHMARK(BM_FastKovtun)->Apply(label_sweep);
BENCHMARK(BM_Relaxation)->Apply(label_sweep);
BENCHMARK(BM_FullPipeline)->Args({64, 16})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExpansionOnly)->Args({64, 16})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
