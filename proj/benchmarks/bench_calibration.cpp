#include <benchmark/benchmark.h>

#include "skillver/calibration.hpp"
#include "skillver/synth.hpp"

namespace {

skillver::PairedSeries make_pairs(std::size_t n) {
  const auto obs = skillver::gen_ar1(n, 0.6, 100.0, 25.0, 7);
  const auto fcst = skillver::gen_forecast(obs, 0.75, -5.0, 0.9, 8);
  return skillver::pair(obs, fcst);
}

void bm_fit_mse(benchmark::State& state) {
  const auto p = make_pairs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(skillver::fit_mse_linear(p));
  }
}

void bm_lad_exact(benchmark::State& state) {
  const auto p = make_pairs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(skillver::fit_mae_linear_exact(p));
  }
}

void bm_lad_irls(benchmark::State& state) {
  const auto p = make_pairs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(skillver::fit_mae_linear_irls(p));
  }
}

}  // namespace

BENCHMARK(bm_fit_mse)->Arg(500)->Arg(100000);
BENCHMARK(bm_lad_exact)->Arg(100)->Arg(300)->Arg(500);
BENCHMARK(bm_lad_irls)->Arg(500)->Arg(10000)->Arg(100000);
