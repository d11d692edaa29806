#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "skillver/series.hpp"

namespace skillver {

enum class CliperDirective { mse, mae };

std::string to_string(CliperDirective d);

/// Optimal combination of climatology and persistence, the reference
/// forecast behind every skill score here.
///
/// The realized reference series is intercept_a + gain_b * x_{t-h}. Under
/// the mse directive the transform is the MSE-optimal affine calibration of
/// the persistence on the overlap sample, so its empirical RMSE equals
/// sqrt(1 - gamma^2) * sigma(x) exactly; weight_w records the nominal
/// convex weight clamp(gamma(h), 0, 1) and clamping to pure climatology is
/// flagged rather than silent. Under the mae directive the series is
/// x_bar + w * (x_{t-h} - x_bar) with w minimizing the in-sample MAE
/// over [0, 1].
struct CliperModel {
  double climatology_mean = 0.0;  // mean of the observation series
  double weight_w = 0.0;          // convex weight in [0, 1]
  int horizon_h = 1;
  CliperDirective directive = CliperDirective::mse;
  bool weight_clipped = false;
  double unclipped_weight = 0.0;
  double intercept_a = 0.0;
  double gain_b = 0.0;

  /// Reference values for a span of lag-h observations.
  std::vector<double> apply(std::span<const double> lagged) const;
};

/// Full verification result for one forecast at one horizon.
struct SkillReport {
  std::size_t n = 0;          // valid forecast/observation pairs
  std::size_t n_overlap = 0;  // lag-overlap sample behind gamma_h and sigma_x
  int horizon_h = 1;
  double rho = 0.0;
  double gamma_h = 0.0;
  double sigma_x = 0.0;
  double rmse_f = 0.0;
  double mae_f = 0.0;
  double nmae = 0.0;
  double nrmse = 0.0;
  double normalizer = 0.0;
  double rmse_cliper = 0.0;  // closed form sqrt(1 - gamma^2) sigma(x)
  double mae_cliper = 0.0;   // empirical MAE of the mae-directive reference
  double s_rmse_actual = 0.0;
  double s_mae_actual = 0.0;
  double s_rmse_potential = 0.0;
  double s_mse_potential = 0.0;
  double mase = 0.0;
  std::vector<std::string> warnings;
};

/// Constant forecast equal to the mean of the observations.
std::vector<double> climatology_forecast(const ObservationSeries& obs);

/// The h-step-ahead persistence, paired with the observations it predicts.
PairedSeries persistence_forecast(const ObservationSeries& obs, int h);

CliperModel fit_cliper(const ObservationSeries& obs, int h, CliperDirective directive);

/// Closed-form reference RMSE: sqrt(1 - gamma^2) * sigma.
double cliper_rmse(double sigma_x, double gamma_h);

/// Generic skill score (a_f - a_r) / (a_p - a_r): 1 perfect, 0 at the
/// reference, unbounded below.
double skill_score(double a_f, double a_r, double a_p);

/// Skill the forecast would attain after MSE-optimal affine calibration:
/// 1 - sqrt((1 - rho^2) / (1 - gamma^2)). Depends on the sign of neither
/// argument; requires |gamma| < 1.
double potential_rmse_skill(double rho, double gamma_h);

/// Same in MSE terms: 1 - (1 - rho^2) / (1 - gamma^2), which equals
/// 1 - (1 - potential_rmse_skill)^2.
double potential_mse_skill(double rho, double gamma_h);

/// MAE of the pairs scaled by the MAE of one-step-ahead persistence.
double mase(const PairedSeries& p, const ObservationSeries& obs);

/// Computes every SkillReport field. Forecast metrics run on the pair
/// sample; gamma, sigma and the reference forecasts run on the lag-overlap
/// sample, with both sample sizes reported.
SkillReport verify(const PairedSeries& p, const ObservationSeries& obs, int h,
                   double normalizer);

}  // namespace skillver
