#include "skillver/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "skillver/errors.hpp"
#include "skillver/metrics.hpp"

namespace skillver {

void SynthSpec::validate() const {
  if (n < 10) throw std::invalid_argument("synth: n must be >= 10");
  if (!(std::abs(phi) < 1.0)) throw std::invalid_argument("synth: |phi| must be < 1");
  if (!(sigma > 0.0)) throw std::invalid_argument("synth: sigma must be > 0");
  if (!(rho_target > 0.0 && rho_target <= 1.0)) {
    throw std::invalid_argument("synth: rho_target must be in (0, 1]");
  }
  if (gain == 0.0) throw std::invalid_argument("synth: gain must be nonzero");
  if (!std::isfinite(mu) || !std::isfinite(bias) || !std::isfinite(gain)) {
    throw std::invalid_argument("synth: parameters must be finite");
  }
}

ObservationSeries gen_ar1(std::size_t n, double phi, double mu, double sigma,
                          std::uint64_t seed) {
  if (n < 10) throw std::invalid_argument("gen_ar1: n must be >= 10");
  if (!(std::abs(phi) < 1.0)) throw std::invalid_argument("gen_ar1: |phi| must be < 1");
  if (!(sigma > 0.0)) throw std::invalid_argument("gen_ar1: sigma must be > 0");
  if (!std::isfinite(mu)) throw std::invalid_argument("gen_ar1: mu must be finite");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> unit(0.0, 1.0);
  const double innovation_std = sigma * std::sqrt(1.0 - phi * phi);

  ObservationSeries obs;
  obs.values.resize(n);
  obs.values[0] = mu + sigma * unit(rng);
  for (std::size_t t = 1; t < n; ++t) {
    obs.values[t] = mu + phi * (obs.values[t - 1] - mu) + innovation_std * unit(rng);
  }
  return obs;
}

ForecastSeries gen_forecast(const ObservationSeries& obs, double rho_target, double bias,
                            double gain, std::uint64_t seed, const std::string& name) {
  if (!(rho_target > 0.0 && rho_target <= 1.0)) {
    throw std::invalid_argument("gen_forecast: rho_target must be in (0, 1]");
  }
  if (gain == 0.0) throw std::invalid_argument("gen_forecast: gain must be nonzero");
  if (!std::isfinite(bias) || !std::isfinite(gain)) {
    throw std::invalid_argument("gen_forecast: parameters must be finite");
  }
  if (obs.size() < 3) throw DataError("gen_forecast: need at least 3 observations");
  const MomentSummary mx = moments(obs.values);
  if (mx.stddev == 0.0) throw DegenerateError("gen_forecast: constant observations");

  const double noise_std =
      mx.stddev * std::sqrt(1.0 / (rho_target * rho_target) - 1.0);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> unit(0.0, 1.0);

  ForecastSeries fcst;
  fcst.name = name;
  fcst.values.resize(obs.size());
  for (std::size_t t = 0; t < obs.size(); ++t) {
    // rho_target = 1 is the noise-free boundary; skipping the draw keeps
    // the output an exact affine image of the observations.
    const double eta = noise_std == 0.0 ? 0.0 : noise_std * unit(rng);
    fcst.values[t] = bias + gain * (obs.values[t] + eta);
  }
  return fcst;
}

namespace {

// Unit-variance noise draw in one of three shapes. Shape diversity is what
// spreads an ensemble along a real MAE/RMSE trade-off: at equal variance
// (equal RMSE contribution) the double-exponential shape costs the least
// MAE and the bounded shape the most, so no single member can win both
// metrics. All-Gaussian members rank identically under MAE and RMSE and the
// trade-off front collapses to one point.
double shaped_noise(std::mt19937_64& rng, int shape,
                    std::normal_distribution<double>& unit,
                    std::uniform_real_distribution<double>& u01) {
  switch (shape) {
    case 1: {  // double exponential
      const double r = u01(rng) - 0.5;
      const double m = std::max(1.0 - 2.0 * std::abs(r), 1e-12);
      return std::copysign(-std::log(m), r) / std::sqrt(2.0);
    }
    case 2:  // bounded uniform
      return (2.0 * u01(rng) - 1.0) * std::sqrt(3.0);
    default:
      return unit(rng);
  }
}

}  // namespace

std::vector<ForecastSeries> gen_ensemble(const ObservationSeries& obs,
                                         const ForecastSeries& base, std::size_t count,
                                         std::uint64_t seed,
                                         const EnsemblePerturbation& perturbation) {
  if (count < 2) throw std::invalid_argument("gen_ensemble: count must be >= 2");
  if (base.size() != obs.size()) {
    throw std::invalid_argument("gen_ensemble: base and observations differ in length");
  }
  if (obs.size() < 3) throw DataError("gen_ensemble: need at least 3 observations");
  if (!(perturbation.gain_min <= perturbation.gain_max)) {
    throw std::invalid_argument("gen_ensemble: gain_min must be <= gain_max");
  }
  if (perturbation.bias_span < 0.0 || perturbation.noise_span < 0.0) {
    throw std::invalid_argument("gen_ensemble: spans must be nonnegative");
  }

  const MomentSummary mx = moments(obs.values);
  const double bias_half = perturbation.bias_span * std::abs(mx.mean);
  const double gain_center = 0.5 * (perturbation.gain_min + perturbation.gain_max);
  const double gain_half = 0.5 * (perturbation.gain_max - perturbation.gain_min);
  const double noise_hi = perturbation.noise_span * mx.stddev;

  // Members form a quality ladder with one calibrated low-noise anchor.
  // The anchor's noise gap keeps it the clear best member under both
  // correlation and squared error. Ladder members carry more noise in one
  // of three unit-variance shapes; at a given noise level the double
  // exponential has the smallest absolute error and the bounded shape the
  // largest, so a heavier-tailed rival undercuts the anchor's absolute
  // error while conceding squared error. That structural trade-off keeps
  // the error front from collapsing onto a single member that wins every
  // metric, which is what an all-Gaussian ensemble degenerates to.
  // Calibration errors shrink quadratically toward the good end of the
  // ladder, so front members differ far more in error level than in
  // correlation.
  std::mt19937_64 master(seed);
  std::vector<std::size_t> rank(count);
  std::iota(rank.begin(), rank.end(), std::size_t{0});
  std::shuffle(rank.begin(), rank.end(), master);

  std::vector<ForecastSeries> members;
  members.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t member_seed = master();
    std::mt19937_64 rng(member_seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::normal_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> shape_of(0, 2);

    double member_bias = 0.0;
    double member_gain = gain_center;
    double member_noise = noise_hi * 0.84;
    int shape = 0;
    if (rank[i] != 0) {
      const double quality = (double(rank[i]) + u01(rng)) / double(count);
      const double miscal = quality * quality;
      member_bias = bias_half * miscal * (2.0 * u01(rng) - 1.0);
      // Gain errors go up only: shrinking the gain toward the series mean
      // would lower the error of a noisy member for free and hand the
      // front to decalibrated members, collapsing the spread between
      // potential and actual skill that the ladder is built to show.
      member_gain = gain_center + gain_half * miscal * u01(rng);
      member_noise = noise_hi * (0.9 + 0.1 * quality);
      shape = shape_of(rng);
    }

    ForecastSeries member;
    member.name = base.name + "_" + std::to_string(i + 1);
    member.values.resize(base.size());
    for (std::size_t t = 0; t < base.size(); ++t) {
      const double eta =
          member_noise == 0.0 ? 0.0 : member_noise * shaped_noise(rng, shape, unit, u01);
      member.values[t] = member_bias + member_gain * (base.values[t] + eta);
    }
    members.push_back(std::move(member));
  }
  return members;
}

}  // namespace skillver
