#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "skillver/ensemble.hpp"
#include "skillver/errors.hpp"
#include "skillver/metrics.hpp"
#include "skillver/series.hpp"
#include "skillver/synth.hpp"

using namespace skillver;

TEST_CASE("generation is a pure function of its arguments") {
  const ObservationSeries a = gen_ar1(500, 0.7, 400.0, 120.0, 9);
  const ObservationSeries b = gen_ar1(500, 0.7, 400.0, 120.0, 9);
  CHECK(a.values == b.values);
  CHECK(gen_ar1(500, 0.7, 400.0, 120.0, 10).values != a.values);

  const ForecastSeries f1 = gen_forecast(a, 0.8, 5.0, 1.1, 77);
  const ForecastSeries f2 = gen_forecast(a, 0.8, 5.0, 1.1, 77);
  CHECK(f1.values == f2.values);

  const auto e1 = gen_ensemble(a, f1, 8, 13);
  const auto e2 = gen_ensemble(a, f1, 8, 13);
  REQUIRE(e1.size() == 8);
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(e1[i].name == e2[i].name);
    CHECK(e1[i].values == e2[i].values);
  }
}

TEST_CASE("autoregressive sample matches its stationary law") {
  const ObservationSeries obs = gen_ar1(100000, 0.9, 400.0, 120.0, 5);
  const MomentSummary m = moments(obs.values);
  CHECK(m.mean == doctest::Approx(400.0).epsilon(0.02));
  CHECK(m.stddev == doctest::Approx(120.0).epsilon(0.02));
  const double g1 = lag_autocorrelation(obs, 1);
  CHECK(g1 > 0.88);
  CHECK(g1 < 0.92);

  // phi = 0 is white noise: the lag correlation vanishes.
  const ObservationSeries flat = gen_ar1(100000, 0.0, 0.0, 1.0, 6);
  CHECK(std::abs(lag_autocorrelation(flat, 1)) < 0.02);
}

TEST_CASE("forecast generator hits its target correlation") {
  const ObservationSeries obs = gen_ar1(100000, 0.6, 400.0, 120.0, 15);
  for (double target : {0.4, 0.8, 0.95}) {
    const ForecastSeries f = gen_forecast(obs, target, 0.0, 1.0, 16);
    CHECK(pearson(pair(obs, f)) == doctest::Approx(target).epsilon(0.0125));
  }
}

TEST_CASE("bias and gain leave the correlation alone") {
  const ObservationSeries obs = gen_ar1(2000, 0.5, 400.0, 120.0, 19);
  const ForecastSeries plain = gen_forecast(obs, 0.7, 0.0, 1.0, 20);
  const ForecastSeries shifted = gen_forecast(obs, 0.7, -80.0, 2.5, 20);
  CHECK(pearson(pair(obs, shifted)) ==
        doctest::Approx(pearson(pair(obs, plain))).epsilon(1e-12));
}

TEST_CASE("a unit-correlation target is the exact affine image") {
  const ObservationSeries obs = gen_ar1(200, 0.3, 400.0, 120.0, 25);
  const ForecastSeries f = gen_forecast(obs, 1.0, 3.0, 0.5, 26, "exact");
  CHECK(f.name == "exact");
  REQUIRE(f.size() == obs.size());
  for (std::size_t t = 0; t < obs.size(); ++t) {
    CHECK(f.values[t] == 3.0 + 0.5 * obs.values[t]);
  }
}

TEST_CASE("zeroed perturbation spans reproduce the base exactly") {
  const ObservationSeries obs = gen_ar1(100, 0.5, 400.0, 120.0, 27);
  const ForecastSeries base = gen_forecast(obs, 0.9, 2.0, 1.0, 28, "base");
  EnsemblePerturbation none;
  none.bias_span = 0.0;
  none.gain_min = 1.0;
  none.gain_max = 1.0;
  none.noise_span = 0.0;
  const auto members = gen_ensemble(obs, base, 2, 29, none);
  REQUIRE(members.size() == 2);
  CHECK(members[0].name == "base_1");
  CHECK(members[1].name == "base_2");
  CHECK(members[0].values == base.values);
  CHECK(members[1].values == base.values);
}

TEST_CASE("ensemble members stay inside the configured ranges") {
  const ObservationSeries obs = gen_ar1(4000, 0.85, 400.0, 120.0, 33);
  const ForecastSeries base = gen_forecast(obs, 0.995, 0.0, 1.0, 34);
  const auto members = gen_ensemble(obs, base, 40, 35);
  const MomentSummary mx = moments(obs.values);
  const MomentSummary mb = moments(base.values);
  const EnsemblePerturbation def;
  for (const auto& m : members) {
    REQUIRE(m.size() == obs.size());
    const MomentSummary mm = moments(m.values);
    // Member = bias + gain * (base + noise): its spread is bounded by the
    // extreme gain on the noisiest base, its mean shift by the bias cap
    // scaled by the extreme gain.
    const double max_gain = def.gain_max;
    const double max_noise = def.noise_span * mx.stddev;
    const double sd_cap =
        max_gain * std::sqrt(mb.stddev * mb.stddev + max_noise * max_noise);
    CHECK(mm.stddev <= sd_cap * 1.10);
    const double mean_cap = def.bias_span * std::abs(mx.mean) +
                            max_gain * std::abs(mb.mean) + 1e-9;
    CHECK(std::abs(mm.mean) <= mean_cap * 1.10);
  }
}

TEST_CASE("ensemble produces a genuine error trade-off") {
  const ObservationSeries obs = gen_ar1(5000, 0.85, 400.0, 120.0, 41);
  const ForecastSeries base = gen_forecast(obs, 0.995, 0.0, 1.0, 42);
  const auto members = gen_ensemble(obs, base, 500, 43);
  const auto rows = evaluate_ensemble(obs, members, 1, moments(obs.values).mean);

  std::size_t min_mae = 0, min_rmse = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].nmae < rows[min_mae].nmae) min_mae = i;
    if (rows[i].nrmse < rows[min_rmse].nrmse) min_rmse = i;
  }
  CHECK(min_mae != min_rmse);
}

TEST_CASE("parameter validation") {
  SynthSpec ok;
  CHECK_NOTHROW(ok.validate());

  auto expect_invalid = [](SynthSpec s) {
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  };
  SynthSpec s;
  s.n = 9;
  expect_invalid(s);
  s = SynthSpec{};
  s.phi = 1.0;
  expect_invalid(s);
  s = SynthSpec{};
  s.phi = -1.0;
  expect_invalid(s);
  s = SynthSpec{};
  s.sigma = 0.0;
  expect_invalid(s);
  s = SynthSpec{};
  s.rho_target = 0.0;
  expect_invalid(s);
  s = SynthSpec{};
  s.rho_target = 1.2;
  expect_invalid(s);
  s = SynthSpec{};
  s.gain = 0.0;
  expect_invalid(s);
  s = SynthSpec{};
  s.mu = std::numeric_limits<double>::infinity();
  expect_invalid(s);
  s = SynthSpec{};
  s.bias = std::numeric_limits<double>::quiet_NaN();
  expect_invalid(s);

  CHECK_THROWS_AS(gen_ar1(9, 0.5, 0.0, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(gen_ar1(100, 1.0, 0.0, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(gen_ar1(100, 0.5, 0.0, 0.0, 1), std::invalid_argument);

  const ObservationSeries obs = gen_ar1(100, 0.5, 400.0, 120.0, 45);
  CHECK_THROWS_AS(gen_forecast(obs, 0.0, 0.0, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(gen_forecast(obs, 1.5, 0.0, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(gen_forecast(obs, 0.8, 0.0, 0.0, 1), std::invalid_argument);

  ObservationSeries tiny;
  tiny.values = {1.0, 2.0};
  CHECK_THROWS_AS(gen_forecast(tiny, 0.8, 0.0, 1.0, 1), DataError);
  ObservationSeries constant;
  constant.values.assign(50, 7.0);
  CHECK_THROWS_AS(gen_forecast(constant, 0.8, 0.0, 1.0, 1), DegenerateError);

  const ForecastSeries base = gen_forecast(obs, 0.9, 0.0, 1.0, 46);
  CHECK_THROWS_AS(gen_ensemble(obs, base, 1, 1), std::invalid_argument);
  ForecastSeries short_base = base;
  short_base.values.pop_back();
  CHECK_THROWS_AS(gen_ensemble(obs, short_base, 4, 1), std::invalid_argument);
  EnsemblePerturbation bad;
  bad.gain_min = 1.5;
  bad.gain_max = 0.5;
  CHECK_THROWS_AS(gen_ensemble(obs, base, 4, 1, bad), std::invalid_argument);
  bad = EnsemblePerturbation{};
  bad.bias_span = -0.1;
  CHECK_THROWS_AS(gen_ensemble(obs, base, 4, 1, bad), std::invalid_argument);
  bad = EnsemblePerturbation{};
  bad.noise_span = -0.1;
  CHECK_THROWS_AS(gen_ensemble(obs, base, 4, 1, bad), std::invalid_argument);
}
