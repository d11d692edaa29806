#include <benchmark/benchmark.h>

#include <random>
#include <utility>
#include <vector>

#include "skillver/ensemble.hpp"
#include "skillver/synth.hpp"

namespace {

std::vector<std::pair<double, double>> random_points(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::pair<double, double>> points(n);
  for (auto& [a, b] : points) {
    a = u(rng);
    b = u(rng);
  }
  return points;
}

void bm_pareto_front(benchmark::State& state) {
  const auto points = random_points(static_cast<std::size_t>(state.range(0)), 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(skillver::pareto_front(points));
  }
}

void bm_evaluate_ensemble(benchmark::State& state) {
  const auto obs = skillver::gen_ar1(2000, 0.85, 400.0, 120.0, 3);
  const auto base = skillver::gen_forecast(obs, 0.8, 0.0, 1.0, 4);
  const auto members =
      skillver::gen_ensemble(obs, base, static_cast<std::size_t>(state.range(0)), 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(skillver::evaluate_ensemble(obs, members, 1, 400.0));
  }
}

}  // namespace

BENCHMARK(bm_pareto_front)->Arg(1000)->Arg(100000);
BENCHMARK(bm_evaluate_ensemble)->Arg(50)->Arg(500);
