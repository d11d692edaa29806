#include "skillver/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "skillver/errors.hpp"

namespace skillver {

namespace {

double mean_of(std::span<const double> values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

// Centered sums of squares and cross products, two-pass.
struct CenteredSums {
  double sff = 0.0;
  double sxx = 0.0;
  double sfx = 0.0;
  double f_mean = 0.0;
  double x_mean = 0.0;
};

CenteredSums centered_sums(const PairedSeries& p) {
  CenteredSums s;
  s.f_mean = mean_of(p.f);
  s.x_mean = mean_of(p.x);
  for (std::size_t i = 0; i < p.n(); ++i) {
    const double df = p.f[i] - s.f_mean;
    const double dx = p.x[i] - s.x_mean;
    s.sff += df * df;
    s.sxx += dx * dx;
    s.sfx += df * dx;
  }
  return s;
}

}  // namespace

MomentSummary moments(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("moments: empty input");
  MomentSummary m;
  m.n = values.size();
  m.mean = mean_of(values);
  double ss = 0.0;
  for (double v : values) {
    const double d = v - m.mean;
    ss += d * d;
  }
  m.stddev = std::sqrt(ss / static_cast<double>(m.n));
  return m;
}

MetricReport error_metrics(const PairedSeries& p, double normalizer) {
  if (p.n() == 0) throw std::invalid_argument("error_metrics: empty pair sample");
  if (!(normalizer > 0.0)) throw std::invalid_argument("error_metrics: normalizer must be positive");
  MetricReport r;
  r.n = p.n();
  r.normalizer = normalizer;
  double sum_e = 0.0, sum_abs = 0.0, sum_sq = 0.0;
  for (std::size_t i = 0; i < p.n(); ++i) {
    const double e = p.f[i] - p.x[i];
    sum_e += e;
    sum_abs += std::abs(e);
    sum_sq += e * e;
  }
  const double n = static_cast<double>(p.n());
  r.bias = sum_e / n;
  r.mae = sum_abs / n;
  r.mse = sum_sq / n;
  r.rmse = std::sqrt(r.mse);
  r.nmae = r.mae / normalizer;
  r.nrmse = r.rmse / normalizer;
  r.rho = pearson_opt(p);
  return r;
}

std::optional<double> pearson_opt(const PairedSeries& p) {
  if (p.n() < 3) return std::nullopt;
  const CenteredSums s = centered_sums(p);
  if (s.sff == 0.0 || s.sxx == 0.0) return std::nullopt;
  const double rho = s.sfx / std::sqrt(s.sff * s.sxx);
  return std::clamp(rho, -1.0, 1.0);
}

double pearson(const PairedSeries& p) {
  if (p.n() < 3) {
    throw DegenerateError("pearson requires at least 3 pairs, got " + std::to_string(p.n()));
  }
  const auto rho = pearson_opt(p);
  if (!rho) throw DegenerateError("pearson undefined: constant forecast or observation side");
  return *rho;
}

double lag_autocorrelation(const ObservationSeries& obs, int h) {
  if (h < 1) throw std::invalid_argument("lag must be >= 1");
  if (obs.size() < static_cast<std::size_t>(h) + 3) {
    throw DataError("series of length " + std::to_string(obs.size()) +
                    " too short for lag-" + std::to_string(h) + " autocorrelation");
  }
  return pearson(lag_pairs(obs, h));
}

}  // namespace skillver
