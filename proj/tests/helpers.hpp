#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "skillver/series.hpp"
#include "skillver/synth.hpp"

namespace testutil {

inline skillver::PairedSeries make_pairs(std::vector<double> f, std::vector<double> x) {
  skillver::PairedSeries p;
  p.f = std::move(f);
  p.x = std::move(x);
  return p;
}

// Forecast restricted to the rows a lag-h reference can predict, so skill
// comparisons between the forecast and the reference run on one sample.
inline skillver::PairedSeries overlap_pairs(const skillver::ObservationSeries& obs,
                                            const skillver::ForecastSeries& fcst, int h) {
  skillver::PairedSeries p;
  for (std::size_t t = static_cast<std::size_t>(h); t < obs.size(); ++t) {
    p.f.push_back(fcst.values[t]);
    p.x.push_back(obs.values[t]);
  }
  return p;
}

inline double mae_of(const skillver::PairedSeries& p) {
  double sum = 0.0;
  for (std::size_t i = 0; i < p.n(); ++i) sum += std::abs(p.f[i] - p.x[i]);
  return sum / static_cast<double>(p.n());
}

inline double rmse_of(const skillver::PairedSeries& p) {
  double sum = 0.0;
  for (std::size_t i = 0; i < p.n(); ++i) {
    const double e = p.f[i] - p.x[i];
    sum += e * e;
  }
  return std::sqrt(sum / static_cast<double>(p.n()));
}

inline double mae_of_line(const skillver::PairedSeries& p, double a, double b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < p.n(); ++i) sum += std::abs(p.x[i] - (a + b * p.f[i]));
  return sum / static_cast<double>(p.n());
}

struct GridCase {
  skillver::ObservationSeries obs;
  skillver::ForecastSeries fcst;
  double phi = 0.0;
  double rho = 0.0;
  double bias = 0.0;
  double gain = 0.0;
};

// 100 seeded datasets spanning autocorrelation sign and strength, forecast
// quality, bias and gain miscalibration.
inline std::vector<GridCase> dataset_grid(std::size_t n = 200) {
  const double phis[] = {0.0, 0.3, 0.6, 0.85, -0.4};
  const double rhos[] = {0.3, 0.5, 0.7, 0.85, 0.95};
  const double biases[] = {-50.0, 30.0};
  const double gains[] = {0.5, 2.0};
  std::vector<GridCase> cases;
  cases.reserve(100);
  std::uint64_t i = 0;
  for (double phi : phis) {
    for (double rho : rhos) {
      for (double bias : biases) {
        for (double gain : gains) {
          GridCase c;
          c.obs = skillver::gen_ar1(n, phi, 400.0, 120.0, 1000 + i);
          c.fcst = skillver::gen_forecast(c.obs, rho, bias, gain, 101000 + i);
          c.phi = phi;
          c.rho = rho;
          c.bias = bias;
          c.gain = gain;
          cases.push_back(std::move(c));
          ++i;
        }
      }
    }
  }
  return cases;
}

inline std::filesystem::path temp_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::filesystem::path write_file(const std::filesystem::path& path,
                                        const std::string& content) {
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace testutil
