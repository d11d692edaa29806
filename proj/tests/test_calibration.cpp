#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "helpers.hpp"
#include "skillver/calibration.hpp"
#include "skillver/errors.hpp"
#include "skillver/metrics.hpp"
#include "skillver/series.hpp"

using namespace skillver;
using testutil::dataset_grid;
using testutil::make_pairs;

namespace {

PairedSeries apply_fit(const LinearCalibration& c, const PairedSeries& p) {
  PairedSeries out;
  out.f = c.apply(p.f);
  out.x = p.x;
  return out;
}

}  // namespace

TEST_CASE("scheme names round-trip") {
  for (auto s : {CalibrationScheme::mse, CalibrationScheme::mae, CalibrationScheme::variance}) {
    CHECK(calibration_scheme_from_string(to_string(s)) == s);
  }
  CHECK_THROWS_AS(calibration_scheme_from_string("quantile"), std::invalid_argument);
}

TEST_CASE("least squares fit on a hand-computed sample") {
  const PairedSeries p = make_pairs({2, 2, 4, 4}, {1, 2, 3, 4});
  const LinearCalibration c = fit_mse_linear(p);
  CHECK(c.intercept_a == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(c.gain_b == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(c.fit_n == 4);
  CHECK(c.converged);

  // Residual error equals sqrt(1 - rho^2) sigma(x) on the fitting sample.
  const double rho = pearson(p);
  const double sigma_x = moments(p.x).stddev;
  CHECK(testutil::rmse_of(apply_fit(c, p)) ==
        doctest::Approx(std::sqrt(1.0 - rho * rho) * sigma_x).epsilon(1e-12));
  CHECK(testutil::rmse_of(apply_fit(c, p)) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("variance fit matches observed mean and spread exactly") {
  const PairedSeries p = make_pairs({2, 2, 4, 4}, {1, 2, 3, 4});
  const LinearCalibration c = fit_variance_linear(p);
  CHECK(c.gain_b == doctest::Approx(1.118033988749895).epsilon(1e-15));
  CHECK(c.intercept_a == doctest::Approx(-0.8541019662496847).epsilon(1e-14));

  const std::vector<double> cal = c.apply(p.f);
  const MomentSummary mc = moments(cal);
  const MomentSummary mx = moments(p.x);
  CHECK(mc.mean == doctest::Approx(mx.mean).epsilon(1e-14));
  CHECK(mc.stddev == doctest::Approx(mx.stddev).epsilon(1e-14));
}

TEST_CASE("least squares properties across the dataset grid") {
  for (const auto& g : dataset_grid()) {
    PairedSeries p;
    p.f = g.fcst.values;
    p.x = g.obs.values;
    const LinearCalibration c = fit_mse_linear(p);
    const std::vector<double> cal = c.apply(p.f);

    const MomentSummary mc = moments(cal);
    const MomentSummary mx = moments(p.x);
    const double rho = pearson(p);

    // Unbiased on the fitting sample.
    CHECK(std::abs(mc.mean - mx.mean) <= 1e-12 * (1.0 + std::abs(mx.mean)));
    // Underdispersed by exactly the correlation factor.
    CHECK(mc.stddev == doctest::Approx(std::abs(rho) * mx.stddev).epsilon(1e-9));
    CHECK(mc.stddev <= mx.stddev * (1.0 + 1e-12));
    // An affine map cannot change the correlation magnitude.
    PairedSeries cp;
    cp.f = cal;
    cp.x = p.x;
    CHECK(std::abs(pearson(cp)) == doctest::Approx(std::abs(rho)).epsilon(1e-12));
  }
}

TEST_CASE("absolute-error fit on a hand-computed sample") {
  // Three points where interpolating the outlier pair beats least squares.
  const PairedSeries p = make_pairs({1, 2, 3}, {1, 2, 10});
  const LinearCalibration c = fit_mae_linear(p);
  CHECK(c.gain_b == doctest::Approx(4.5).epsilon(1e-15));
  CHECK(c.intercept_a == doctest::Approx(-3.5).epsilon(1e-15));
  CHECK(testutil::mae_of_line(p, c.intercept_a, c.gain_b) ==
        doctest::Approx(7.0 / 6.0).epsilon(1e-15));
}

TEST_CASE("absolute-error fit beats a dense coefficient grid") {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.5, 2.0);
  for (int rep = 0; rep < 10; ++rep) {
    const std::size_t n = 40 + 13 * static_cast<std::size_t>(rep);
    const double true_b = u(rng), true_a = 10.0 * (u(rng) - 1.0);
    PairedSeries p;
    p.f.resize(n);
    p.x.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      p.f[i] = 5.0 * noise(rng);
      const double heavy = noise(rng) * (i % 7 == 0 ? 6.0 : 1.0);
      p.x[i] = true_a + true_b * p.f[i] + heavy;
    }
    const LinearCalibration c = fit_mae_linear(p);
    const double fit_mae = testutil::mae_of_line(p, c.intercept_a, c.gain_b);

    const LinearCalibration seed = fit_mse_linear(p);
    const double sigma_x = moments(p.x).stddev;
    const double a_span = std::max(std::abs(seed.intercept_a) * 0.5, 0.1 * sigma_x);
    const double b_span = std::max(std::abs(seed.gain_b) * 0.5, 0.1);
    double grid_best = std::numeric_limits<double>::infinity();
    for (int ia = 0; ia <= 200; ++ia) {
      const double a = seed.intercept_a - a_span + 2.0 * a_span * ia / 200.0;
      for (int ib = 0; ib <= 200; ++ib) {
        const double b = seed.gain_b - b_span + 2.0 * b_span * ib / 200.0;
        grid_best = std::min(grid_best, testutil::mae_of_line(p, a, b));
      }
    }
    CHECK(fit_mae <= grid_best + 1e-6 * sigma_x);
  }
}

TEST_CASE("iterative and exact absolute-error fits agree") {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (std::size_t n : {std::size_t{50}, std::size_t{120}, std::size_t{500}}) {
    PairedSeries p;
    p.f.resize(n);
    p.x.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      p.f[i] = 3.0 * noise(rng) + 1.0;
      p.x[i] = 2.0 + 0.8 * p.f[i] + noise(rng) * (i % 5 == 0 ? 4.0 : 1.0);
    }
    const LinearCalibration best = fit_mae_linear_exact(p);
    const double exact = testutil::mae_of_line(p, best.intercept_a, best.gain_b);
    const LinearCalibration irls = fit_mae_linear_irls(p);
    const double iterative = testutil::mae_of_line(p, irls.intercept_a, irls.gain_b);
    CHECK(iterative <= exact * (1.0 + 1e-4));
    CHECK(irls.converged);
  }
}

TEST_CASE("dispatch switches strategy on sample size") {
  std::mt19937_64 rng(37);
  std::normal_distribution<double> noise(0.0, 1.0);
  PairedSeries big;
  big.f.resize(kLadExactMaxN + 1);
  big.x.resize(kLadExactMaxN + 1);
  for (std::size_t i = 0; i < big.n(); ++i) {
    big.f[i] = noise(rng);
    big.x[i] = 1.0 + 2.0 * big.f[i] + noise(rng);
  }
  // Above the cutoff the dispatcher and the iterative path coincide.
  const LinearCalibration via_dispatch = fit_mae_linear(big);
  const LinearCalibration via_irls = fit_mae_linear_irls(big);
  CHECK(via_dispatch.intercept_a == via_irls.intercept_a);
  CHECK(via_dispatch.gain_b == via_irls.gain_b);
}

TEST_CASE("a starved iteration cap is reported") {
  std::mt19937_64 rng(41);
  std::normal_distribution<double> noise(0.0, 1.0);
  PairedSeries p;
  p.f.resize(600);
  p.x.resize(600);
  for (std::size_t i = 0; i < p.n(); ++i) {
    p.f[i] = noise(rng);
    p.x[i] = 5.0 * p.f[i] + noise(rng) * (i % 3 == 0 ? 8.0 : 0.5);
  }
  IrlsOptions starved;
  starved.max_iterations = 1;
  CHECK_FALSE(fit_mae_linear_irls(p, starved).converged);
}

TEST_CASE("fits refuse degenerate samples") {
  const PairedSeries constant = make_pairs({3, 3, 3, 3}, {1, 2, 3, 4});
  CHECK_THROWS_AS(fit_mse_linear(constant), DegenerateError);
  CHECK_THROWS_AS(fit_variance_linear(constant), DegenerateError);
  CHECK_THROWS_AS(fit_mae_linear(constant), DegenerateError);

  const PairedSeries tiny = make_pairs({1, 2}, {1, 2});
  CHECK_THROWS_AS(fit_mse_linear(tiny), std::invalid_argument);
  CHECK_THROWS_AS(fit_variance_linear(tiny), std::invalid_argument);
  CHECK_THROWS_AS(fit_mae_linear(tiny), std::invalid_argument);
}

TEST_CASE("apply maps values through the affine coefficients") {
  LinearCalibration c;
  c.intercept_a = 2.0;
  c.gain_b = -0.5;
  CHECK(c.apply(std::vector<double>{0, 2, 4}) == std::vector<double>{2, 1, 0});
}
