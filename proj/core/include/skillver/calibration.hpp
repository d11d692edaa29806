#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "skillver/series.hpp"

namespace skillver {

enum class CalibrationScheme { mse, mae, variance };

std::string to_string(CalibrationScheme s);
CalibrationScheme calibration_scheme_from_string(const std::string& s);

/// Affine recalibration f = a + b * f'.
///
/// Scheme invariants on the fitting sample (population moments):
///   mse:      gain_b * sigma(f') = rho(f', x) * sigma(x), calibrated
///             forecast unbiased and MSE-optimal over all affine maps
///   variance: gain_b = sigma(x) / sigma(f'), calibrated forecast matches
///             mean(x) and sigma(x) exactly
///   mae:      (a, b) minimize mean |x - (a + b f')|
struct LinearCalibration {
  double intercept_a = 0.0;
  double gain_b = 1.0;
  CalibrationScheme scheme = CalibrationScheme::mse;
  std::size_t fit_n = 0;
  bool converged = true;  // false only when the IRLS path hit its cap

  std::vector<double> apply(std::span<const double> f_prime) const;
};

/// Ordinary least squares of x on f': gain = cov/var, intercept matches the
/// means. The calibrated forecast is unbiased on the fitting sample.
LinearCalibration fit_mse_linear(const PairedSeries& p);

/// Least absolute deviations fit. Up to kLadExactMaxN pairs the optimum is
/// found exactly by enumerating every line through two sample points with
/// distinct f' values plus the zero-slope median line; an LAD optimum with
/// two free parameters always interpolates at least two points, so the
/// enumeration contains it. Ties are broken toward the smallest |gain|,
/// then the smallest |intercept|. Larger samples switch to IRLS seeded at
/// the MSE fit.
LinearCalibration fit_mae_linear(const PairedSeries& p);

/// The two LAD strategies, callable directly regardless of sample size.
LinearCalibration fit_mae_linear_exact(const PairedSeries& p);
LinearCalibration fit_mae_linear_irls(const PairedSeries& p);

/// Variance-corrected scheme: rescales f' so the calibrated forecast has
/// exactly the observed mean and standard deviation.
LinearCalibration fit_variance_linear(const PairedSeries& p);

inline constexpr std::size_t kLadExactMaxN = 500;

struct IrlsOptions {
  double epsilon = 1e-8;        // residual smoothing floor for the weights
  int max_iterations = 200;
  double coefficient_tol = 1e-10;
};

LinearCalibration fit_mae_linear_irls(const PairedSeries& p, const IrlsOptions& options);

}  // namespace skillver
