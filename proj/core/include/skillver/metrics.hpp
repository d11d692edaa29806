#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "skillver/series.hpp"

namespace skillver {

/// Mean and population standard deviation (denominator n). The population
/// convention is used throughout the library so that the closed-form
/// identities between calibration, reference and skill computations hold
/// exactly on finite samples.
struct MomentSummary {
  double mean = 0.0;
  double stddev = 0.0;
  std::size_t n = 0;
};

struct MetricReport {
  double bias = 0.0;
  double mae = 0.0;
  double mse = 0.0;
  double rmse = 0.0;   // sqrt(mse) by definition
  double nmae = 0.0;   // mae / normalizer
  double nrmse = 0.0;  // rmse / normalizer
  std::optional<double> rho;  // empty when either side is constant or n < 3
  std::size_t n = 0;
  double normalizer = 0.0;
};

MomentSummary moments(std::span<const double> values);

/// Bias, MAE, MSE, RMSE and their normalized forms for one paired sample.
/// `normalizer` must be positive; the correlation field is left empty
/// instead of failing when it is undefined on the sample.
MetricReport error_metrics(const PairedSeries& p, double normalizer);

/// Population-moment Pearson correlation of the pairs, clamped to [-1, 1].
/// Requires n >= 3 and both sides non-constant (DegenerateError otherwise).
double pearson(const PairedSeries& p);

/// Same computation returning an empty optional instead of throwing.
std::optional<double> pearson_opt(const PairedSeries& p);

/// Lag-h autocorrelation: the plain Pearson correlation between the lag-h
/// observations and the observations, computed over the overlapping pairs
/// with separate means and standard deviations per side.
double lag_autocorrelation(const ObservationSeries& obs, int h);

}  // namespace skillver
