#include "skillver/reference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "skillver/calibration.hpp"
#include "skillver/errors.hpp"
#include "skillver/metrics.hpp"

namespace skillver {

std::string to_string(CliperDirective d) {
  return d == CliperDirective::mse ? "mse" : "mae";
}

std::vector<double> CliperModel::apply(std::span<const double> lagged) const {
  std::vector<double> out(lagged.size());
  for (std::size_t i = 0; i < lagged.size(); ++i) out[i] = intercept_a + gain_b * lagged[i];
  return out;
}

std::vector<double> climatology_forecast(const ObservationSeries& obs) {
  if (obs.size() == 0) throw std::invalid_argument("climatology_forecast: empty series");
  const double mean = moments(obs.values).mean;
  return std::vector<double>(obs.size(), mean);
}

PairedSeries persistence_forecast(const ObservationSeries& obs, int h) {
  return lag_pairs(obs, h);
}

namespace {

double overlap_mae(const PairedSeries& overlap, double x_bar, double w) {
  double sum = 0.0;
  for (std::size_t i = 0; i < overlap.n(); ++i) {
    sum += std::abs(overlap.x[i] - (x_bar + w * (overlap.f[i] - x_bar)));
  }
  return sum / static_cast<double>(overlap.n());
}

// Golden-section search for the MAE-minimizing convex weight. The objective
// is a mean of absolute values of affine functions of w, hence convex.
double mae_optimal_weight(const PairedSeries& overlap, double x_bar, double tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double lo = 0.0, hi = 1.0;
  double m1 = hi - kInvPhi * (hi - lo);
  double m2 = lo + kInvPhi * (hi - lo);
  double f1 = overlap_mae(overlap, x_bar, m1);
  double f2 = overlap_mae(overlap, x_bar, m2);
  while (hi - lo > tol) {
    if (f1 <= f2) {
      hi = m2;
      m2 = m1;
      f2 = f1;
      m1 = hi - kInvPhi * (hi - lo);
      f1 = overlap_mae(overlap, x_bar, m1);
    } else {
      lo = m1;
      m1 = m2;
      f1 = f2;
      m2 = lo + kInvPhi * (hi - lo);
      f2 = overlap_mae(overlap, x_bar, m2);
    }
  }
  const double w = 0.5 * (lo + hi);
  // Endpoints win when the minimum sits on the boundary within tolerance.
  const double w_clamped = std::clamp(w, 0.0, 1.0);
  double best = w_clamped;
  double best_mae = overlap_mae(overlap, x_bar, w_clamped);
  for (double edge : {0.0, 1.0}) {
    const double edge_mae = overlap_mae(overlap, x_bar, edge);
    if (edge_mae < best_mae) {
      best_mae = edge_mae;
      best = edge;
    }
  }
  return best;
}

}  // namespace

CliperModel fit_cliper(const ObservationSeries& obs, int h, CliperDirective directive) {
  if (h < 1) throw std::invalid_argument("fit_cliper: horizon must be >= 1");
  if (obs.size() < static_cast<std::size_t>(h) + 3) {
    throw DataError("series of length " + std::to_string(obs.size()) +
                    " too short to fit a lag-" + std::to_string(h) + " reference");
  }
  const PairedSeries overlap = lag_pairs(obs, h);

  CliperModel model;
  model.horizon_h = h;
  model.directive = directive;
  model.climatology_mean = moments(obs.values).mean;

  if (directive == CliperDirective::mse) {
    const double gamma = pearson(overlap);  // throws on constant overlap
    model.unclipped_weight = gamma;
    model.weight_w = std::clamp(gamma, 0.0, 1.0);
    model.weight_clipped = model.weight_w != gamma;
    if (model.weight_clipped) {
      model.intercept_a = model.climatology_mean;
      model.gain_b = 0.0;
    } else {
      // MSE-optimal affine calibration of the persistence; its empirical
      // RMSE on the overlap sample is sqrt(1 - gamma^2) sigma(x) exactly.
      const LinearCalibration fit = fit_mse_linear(overlap);
      model.intercept_a = fit.intercept_a;
      model.gain_b = fit.gain_b;
    }
    return model;
  }

  const MomentSummary lagged = moments(overlap.f);
  const MomentSummary unlagged = moments(overlap.x);
  if (lagged.stddev == 0.0 || unlagged.stddev == 0.0) {
    throw DegenerateError("fit_cliper: constant overlap sample");
  }
  const double w = mae_optimal_weight(overlap, model.climatology_mean, 1e-8);
  model.weight_w = w;
  model.unclipped_weight = w;
  model.weight_clipped = false;
  model.intercept_a = model.climatology_mean * (1.0 - w);
  model.gain_b = w;
  return model;
}

double cliper_rmse(double sigma_x, double gamma_h) {
  if (sigma_x < 0.0) throw std::invalid_argument("cliper_rmse: negative sigma");
  if (std::abs(gamma_h) > 1.0 + 1e-12) {
    throw std::invalid_argument("cliper_rmse: |gamma| exceeds 1");
  }
  const double one_minus = std::max(0.0, 1.0 - gamma_h * gamma_h);
  return std::sqrt(one_minus) * sigma_x;
}

double skill_score(double a_f, double a_r, double a_p) {
  if (a_r == a_p) {
    throw DegenerateError("skill_score: reference equals the perfect score, skill undefined");
  }
  return (a_f - a_r) / (a_p - a_r);
}

namespace {

void check_potential_args(double rho, double gamma_h) {
  if (std::abs(rho) > 1.0 + 1e-12) {
    throw std::invalid_argument("potential skill: |rho| exceeds 1");
  }
  if (std::abs(gamma_h) >= 1.0) {
    throw DegenerateError("potential skill undefined: |gamma(h)| >= 1, reference is perfect");
  }
}

}  // namespace

double potential_rmse_skill(double rho, double gamma_h) {
  check_potential_args(rho, gamma_h);
  const double rho2 = std::min(rho * rho, 1.0);
  return 1.0 - std::sqrt((1.0 - rho2) / (1.0 - gamma_h * gamma_h));
}

double potential_mse_skill(double rho, double gamma_h) {
  check_potential_args(rho, gamma_h);
  const double rho2 = std::min(rho * rho, 1.0);
  return 1.0 - (1.0 - rho2) / (1.0 - gamma_h * gamma_h);
}

double mase(const PairedSeries& p, const ObservationSeries& obs) {
  if (obs.size() < 3) throw DataError("mase: observation series too short");
  if (p.n() == 0) throw std::invalid_argument("mase: empty pair sample");
  const PairedSeries persistence = lag_pairs(obs, 1);
  double denom = 0.0;
  for (std::size_t i = 0; i < persistence.n(); ++i) {
    denom += std::abs(persistence.f[i] - persistence.x[i]);
  }
  denom /= static_cast<double>(persistence.n());
  if (denom == 0.0) {
    throw DegenerateError("mase undefined: one-step persistence has zero MAE");
  }
  double mae_f = 0.0;
  for (std::size_t i = 0; i < p.n(); ++i) mae_f += std::abs(p.f[i] - p.x[i]);
  mae_f /= static_cast<double>(p.n());
  return mae_f / denom;
}

SkillReport verify(const PairedSeries& p, const ObservationSeries& obs, int h,
                   double normalizer) {
  if (!(normalizer > 0.0)) throw std::invalid_argument("verify: normalizer must be positive");

  SkillReport report;
  report.n = p.n();
  report.horizon_h = h;
  report.normalizer = normalizer;

  const PairedSeries overlap = lag_pairs(obs, h);
  report.n_overlap = overlap.n();
  report.gamma_h = lag_autocorrelation(obs, h);
  report.sigma_x = moments(overlap.x).stddev;
  report.rho = pearson(p);

  const MetricReport metrics = error_metrics(p, normalizer);
  report.rmse_f = metrics.rmse;
  report.mae_f = metrics.mae;
  report.nmae = metrics.nmae;
  report.nrmse = metrics.nrmse;

  report.rmse_cliper = cliper_rmse(report.sigma_x, report.gamma_h);
  if (report.rmse_cliper == 0.0) {
    throw DegenerateError("skill undefined: |gamma(h)| = 1, reference RMSE is zero");
  }

  const CliperModel mse_ref = fit_cliper(obs, h, CliperDirective::mse);
  if (mse_ref.weight_clipped) report.warnings.push_back("cliper_weight_clipped");

  const CliperModel mae_ref = fit_cliper(obs, h, CliperDirective::mae);
  {
    const std::vector<double> ref = mae_ref.apply(overlap.f);
    double sum = 0.0;
    for (std::size_t i = 0; i < overlap.n(); ++i) sum += std::abs(ref[i] - overlap.x[i]);
    report.mae_cliper = sum / static_cast<double>(overlap.n());
  }
  if (report.mae_cliper == 0.0) {
    throw DegenerateError("skill undefined: reference MAE is zero");
  }

  report.s_rmse_actual = 1.0 - report.rmse_f / report.rmse_cliper;
  report.s_mae_actual = 1.0 - report.mae_f / report.mae_cliper;
  report.s_rmse_potential = potential_rmse_skill(report.rho, report.gamma_h);
  report.s_mse_potential = potential_mse_skill(report.rho, report.gamma_h);
  report.mase = mase(p, obs);
  // The lag trim alone is structural; the warning fires only when pairing
  // dropped rows, putting the forecast metrics on a reduced sample.
  if (p.n() != obs.size() || p.dropped > 0) {
    report.warnings.push_back("sample_size_mismatch");
  }
  return report;
}

}  // namespace skillver
