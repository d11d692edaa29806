#include <benchmark/benchmark.h>

#include "skillver/metrics.hpp"
#include "skillver/reference.hpp"
#include "skillver/synth.hpp"

namespace {

skillver::PairedSeries make_pairs(std::size_t n) {
  const auto obs = skillver::gen_ar1(n, 0.85, 400.0, 120.0, 42);
  const auto fcst = skillver::gen_forecast(obs, 0.8, 10.0, 1.1, 43);
  return skillver::pair(obs, fcst);
}

void bm_error_metrics(benchmark::State& state) {
  const auto p = make_pairs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(skillver::error_metrics(p, 400.0));
  }
}

void bm_verify(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const auto obs = skillver::gen_ar1(n, 0.85, 400.0, 120.0, 42);
  const auto fcst = skillver::gen_forecast(obs, 0.8, 10.0, 1.1, 43);
  const auto p = skillver::pair(obs, fcst);
  for (auto _ : state) {
    benchmark::DoNotOptimize(skillver::verify(p, obs, 1, 400.0));
  }
}

void bm_gen_ar1(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(skillver::gen_ar1(n, 0.85, 400.0, 120.0, 42));
  }
}

}  // namespace

BENCHMARK(bm_error_metrics)->Arg(1000)->Arg(100000);
BENCHMARK(bm_verify)->Arg(1000)->Arg(100000);
BENCHMARK(bm_gen_ar1)->Arg(1000)->Arg(100000);

BENCHMARK_MAIN();
