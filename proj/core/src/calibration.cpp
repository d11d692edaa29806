#include "skillver/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>

#include "skillver/errors.hpp"
#include "skillver/metrics.hpp"

namespace skillver {

std::string to_string(CalibrationScheme s) {
  switch (s) {
    case CalibrationScheme::mse: return "mse";
    case CalibrationScheme::mae: return "mae";
    case CalibrationScheme::variance: return "variance";
  }
  return "mse";
}

CalibrationScheme calibration_scheme_from_string(const std::string& s) {
  if (s == "mse") return CalibrationScheme::mse;
  if (s == "mae") return CalibrationScheme::mae;
  if (s == "variance") return CalibrationScheme::variance;
  throw std::invalid_argument("unknown calibration scheme: " + s);
}

std::vector<double> LinearCalibration::apply(std::span<const double> f_prime) const {
  std::vector<double> out(f_prime.size());
  for (std::size_t i = 0; i < f_prime.size(); ++i) out[i] = intercept_a + gain_b * f_prime[i];
  return out;
}

namespace {

void require_fit_sample(const PairedSeries& p, const char* what) {
  if (p.n() < 3) {
    throw std::invalid_argument(std::string(what) + " requires at least 3 pairs, got " +
                                std::to_string(p.n()));
  }
}

struct FitSums {
  double f_mean, x_mean, sff, sxx, sfx;
};

FitSums fit_sums(const PairedSeries& p) {
  FitSums s{0, 0, 0, 0, 0};
  for (std::size_t i = 0; i < p.n(); ++i) {
    s.f_mean += p.f[i];
    s.x_mean += p.x[i];
  }
  const double n = static_cast<double>(p.n());
  s.f_mean /= n;
  s.x_mean /= n;
  for (std::size_t i = 0; i < p.n(); ++i) {
    const double df = p.f[i] - s.f_mean;
    const double dx = p.x[i] - s.x_mean;
    s.sff += df * df;
    s.sxx += dx * dx;
    s.sfx += df * dx;
  }
  return s;
}

double in_sample_mae(const PairedSeries& p, double a, double b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < p.n(); ++i) sum += std::abs(p.x[i] - (a + b * p.f[i]));
  return sum / static_cast<double>(p.n());
}

double median_of(std::vector<double> v) {
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  double upper = v[mid];
  if (v.size() % 2 == 0) {
    std::nth_element(v.begin(), v.begin() + mid - 1, v.begin() + mid);
    return 0.5 * (v[mid - 1] + upper);
  }
  return upper;
}

}  // namespace

LinearCalibration fit_mse_linear(const PairedSeries& p) {
  require_fit_sample(p, "fit_mse_linear");
  const FitSums s = fit_sums(p);
  if (s.sff == 0.0) throw DegenerateError("fit_mse_linear: constant forecast, gain unidentifiable");
  LinearCalibration c;
  c.scheme = CalibrationScheme::mse;
  c.fit_n = p.n();
  c.gain_b = s.sfx / s.sff;
  c.intercept_a = s.x_mean - c.gain_b * s.f_mean;
  return c;
}

LinearCalibration fit_variance_linear(const PairedSeries& p) {
  require_fit_sample(p, "fit_variance_linear");
  const FitSums s = fit_sums(p);
  if (s.sff == 0.0) {
    throw DegenerateError("fit_variance_linear: constant forecast, gain unidentifiable");
  }
  LinearCalibration c;
  c.scheme = CalibrationScheme::variance;
  c.fit_n = p.n();
  c.gain_b = std::sqrt(s.sxx / s.sff);
  c.intercept_a = s.x_mean - c.gain_b * s.f_mean;
  return c;
}

LinearCalibration fit_mae_linear_exact(const PairedSeries& p) {
  require_fit_sample(p, "fit_mae_linear");
  const FitSums s = fit_sums(p);
  if (s.sff == 0.0) throw DegenerateError("fit_mae_linear: constant forecast, gain unidentifiable");

  struct Candidate {
    double a, b, mae;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(p.n() * (p.n() - 1) / 2 + 1);

  for (std::size_t i = 0; i + 1 < p.n(); ++i) {
    for (std::size_t j = i + 1; j < p.n(); ++j) {
      if (p.f[i] == p.f[j]) continue;
      const double b = (p.x[j] - p.x[i]) / (p.f[j] - p.f[i]);
      const double a = p.x[i] - b * p.f[i];
      candidates.push_back({a, b, in_sample_mae(p, a, b)});
    }
  }
  // Zero-slope line through the median covers layouts where every
  // interpolating line is worse than a constant.
  {
    const double a = median_of(p.x);
    candidates.push_back({a, 0.0, in_sample_mae(p, a, 0.0)});
  }

  double best_mae = std::numeric_limits<double>::infinity();
  for (const auto& c : candidates) best_mae = std::min(best_mae, c.mae);
  // Candidates within rounding noise of the optimum count as ties.
  const double tie_band = best_mae + 1e-12 * (1.0 + best_mae);

  const Candidate* chosen = nullptr;
  for (const auto& c : candidates) {
    if (c.mae > tie_band) continue;
    if (chosen == nullptr) {
      chosen = &c;
      continue;
    }
    const auto key = [](const Candidate& k) {
      return std::tuple(std::abs(k.b), std::abs(k.a), k.b, k.a);
    };
    if (key(c) < key(*chosen)) chosen = &c;
  }

  LinearCalibration c;
  c.scheme = CalibrationScheme::mae;
  c.fit_n = p.n();
  c.intercept_a = chosen->a;
  c.gain_b = chosen->b;
  return c;
}

LinearCalibration fit_mae_linear_irls(const PairedSeries& p, const IrlsOptions& options) {
  require_fit_sample(p, "fit_mae_linear");
  LinearCalibration c = fit_mse_linear(p);
  c.scheme = CalibrationScheme::mae;

  double a = c.intercept_a;
  double b = c.gain_b;
  double best_a = a, best_b = b;
  double best_mae = in_sample_mae(p, a, b);
  bool converged = false;

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    double sw = 0.0, swf = 0.0, swx = 0.0, swff = 0.0, swfx = 0.0;
    for (std::size_t i = 0; i < p.n(); ++i) {
      const double r = p.x[i] - (a + b * p.f[i]);
      const double w = 1.0 / std::max(std::abs(r), options.epsilon);
      sw += w;
      swf += w * p.f[i];
      swx += w * p.x[i];
      swff += w * p.f[i] * p.f[i];
      swfx += w * p.f[i] * p.x[i];
    }
    const double denom = sw * swff - swf * swf;
    if (denom == 0.0) break;
    const double b_next = (sw * swfx - swf * swx) / denom;
    const double a_next = (swx - b_next * swf) / sw;

    const double mae = in_sample_mae(p, a_next, b_next);
    if (mae < best_mae) {
      best_mae = mae;
      best_a = a_next;
      best_b = b_next;
    }
    const bool a_done = std::abs(a_next - a) <= options.coefficient_tol * (1.0 + std::abs(a_next));
    const bool b_done = std::abs(b_next - b) <= options.coefficient_tol * (1.0 + std::abs(b_next));
    a = a_next;
    b = b_next;
    if (a_done && b_done) {
      converged = true;
      break;
    }
  }

  c.intercept_a = best_a;
  c.gain_b = best_b;
  c.converged = converged;
  return c;
}

LinearCalibration fit_mae_linear_irls(const PairedSeries& p) {
  return fit_mae_linear_irls(p, IrlsOptions{});
}

LinearCalibration fit_mae_linear(const PairedSeries& p) {
  if (p.n() <= kLadExactMaxN) return fit_mae_linear_exact(p);
  return fit_mae_linear_irls(p);
}

}  // namespace skillver
