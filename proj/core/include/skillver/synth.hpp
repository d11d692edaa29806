#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "skillver/series.hpp"

namespace skillver {

/// Parameters for one synthetic dataset. Reproducibility is promised per
/// seed within one build of the library, not across implementations.
struct SynthSpec {
  std::size_t n = 1000;
  double phi = 0.85;        // AR(1) coefficient, |phi| < 1
  double mu = 400.0;
  double sigma = 120.0;     // stationary standard deviation, > 0
  double rho_target = 0.8;  // forecast/observation correlation, in (0, 1]
  double bias = 0.0;
  double gain = 1.0;        // != 0
  std::uint64_t seed = 1;

  void validate() const;  // throws std::invalid_argument
};

/// Stationary AR(1) sample: x_0 from the stationary law, then
/// x_t = mu + phi (x_{t-1} - mu) + e_t with e_t ~ N(0, sigma^2 (1 - phi^2)),
/// so the series has stationary mean mu and standard deviation sigma.
ObservationSeries gen_ar1(std::size_t n, double phi, double mu, double sigma,
                          std::uint64_t seed);

/// f'_t = bias + gain (x_t + eta_t) with eta_t ~ N(0, sigma(x)^2 (1/rho^2 - 1)),
/// which sets the population correlation with x to rho_target for gain > 0.
ForecastSeries gen_forecast(const ObservationSeries& obs, double rho_target, double bias,
                            double gain, std::uint64_t seed,
                            const std::string& name = "fcst");

/// Perturbation ranges for gen_ensemble. The defaults produce the spread of
/// MAE/RMSE trade-offs used by the desk-scale Pareto scenario; zeroing the
/// spans reproduces the base forecast exactly.
struct EnsemblePerturbation {
  double bias_span = 0.3;   // bias magnitude capped at span * |mean(x)|
  double gain_min = 0.6;
  double gain_max = 1.4;
  double noise_span = 0.5;  // added noise stddev capped at span * sigma(x)
};

/// `count` affine-plus-noise variants of a base forecast, named
/// "<base>_1" .. "<base>_count". Members form a seeded quality ladder
/// around one calibrated low-noise anchor, with added noise drawn in
/// per-member shapes, so minimizing MAE and minimizing RMSE generally
/// select different members and the best member by correlation stays on
/// the error front.
std::vector<ForecastSeries> gen_ensemble(const ObservationSeries& obs,
                                         const ForecastSeries& base, std::size_t count,
                                         std::uint64_t seed,
                                         const EnsemblePerturbation& perturbation = {});

}  // namespace skillver
