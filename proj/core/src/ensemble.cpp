#include "skillver/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "skillver/errors.hpp"
#include "skillver/metrics.hpp"
#include "skillver/reference.hpp"

namespace skillver {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

std::vector<bool> pareto_front(const std::vector<std::pair<double, double>>& points) {
  if (points.empty()) throw std::invalid_argument("pareto_front: empty input");
  for (const auto& [mae, rmse] : points) {
    if (!std::isfinite(mae) || !std::isfinite(rmse)) {
      throw std::invalid_argument("pareto_front: non-finite point");
    }
  }
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    if (points[i].first != points[j].first) return points[i].first < points[j].first;
    return points[i].second < points[j].second;
  });

  std::vector<bool> on_front(points.size(), false);
  double best_rmse_before = std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  while (i < order.size()) {
    // One group of equal-mae points at a time; within a group only the
    // minimal-rmse members (and their duplicates) can be efficient.
    std::size_t j = i;
    const double group_mae = points[order[i]].first;
    const double group_min_rmse = points[order[i]].second;  // sorted ascending
    while (j < order.size() && points[order[j]].first == group_mae) ++j;
    for (std::size_t k = i; k < j; ++k) {
      const double rmse = points[order[k]].second;
      on_front[order[k]] = rmse == group_min_rmse && rmse < best_rmse_before;
    }
    best_rmse_before = std::min(best_rmse_before, group_min_rmse);
    i = j;
  }
  return on_front;
}

std::vector<EnsembleRow> evaluate_ensemble(const ObservationSeries& obs,
                                           const std::vector<ForecastSeries>& forecasts,
                                           int h, double normalizer) {
  if (forecasts.empty()) throw std::invalid_argument("evaluate_ensemble: no forecasts");
  if (!(normalizer > 0.0)) {
    throw std::invalid_argument("evaluate_ensemble: normalizer must be positive");
  }

  const double gamma = lag_autocorrelation(obs, h);
  const PairedSeries overlap = lag_pairs(obs, h);
  const double sigma_x = moments(overlap.x).stddev;
  const double rmse_ref = cliper_rmse(sigma_x, gamma);
  if (rmse_ref == 0.0) {
    throw DegenerateError("evaluate_ensemble: |gamma(h)| = 1, reference RMSE is zero");
  }

  std::vector<EnsembleRow> rows;
  rows.reserve(forecasts.size());
  for (const auto& fcst : forecasts) {
    EnsembleRow row;
    row.name = fcst.name;
    try {
      const PairedSeries p = pair(obs, fcst);
      const MetricReport m = error_metrics(p, normalizer);
      row.nmae = m.nmae;
      row.nrmse = m.nrmse;
      row.s_rmse_actual = 1.0 - m.rmse / rmse_ref;
      if (m.rho) {
        row.rho = *m.rho;
        row.s_rmse_potential = potential_rmse_skill(row.rho, gamma);
      } else {
        row.rho = kNaN;
        row.s_rmse_potential = kNaN;
        row.degenerate = true;
      }
    } catch (const DataError&) {
      row.nmae = row.nrmse = row.rho = kNaN;
      row.s_rmse_actual = row.s_rmse_potential = kNaN;
      row.degenerate = true;
    }
    rows.push_back(std::move(row));
  }

  // Front membership over the rows with finite error metrics.
  std::vector<std::size_t> usable;
  std::vector<std::pair<double, double>> points;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (std::isfinite(rows[i].nmae) && std::isfinite(rows[i].nrmse)) {
      usable.push_back(i);
      points.emplace_back(rows[i].nmae, rows[i].nrmse);
    }
  }
  if (!points.empty()) {
    const std::vector<bool> front = pareto_front(points);
    for (std::size_t k = 0; k < usable.size(); ++k) rows[usable[k]].on_front = front[k];
  }
  return rows;
}

std::string scatter_csv(const std::vector<EnsembleRow>& rows) {
  std::string out = "name,nmae,nrmse,rho,s_rmse_actual,s_rmse_potential,on_front\n";
  for (const auto& row : rows) {
    out += row.name;
    out += ',';
    out += format_double(row.nmae);
    out += ',';
    out += format_double(row.nrmse);
    out += ',';
    out += format_double(row.rho);
    out += ',';
    out += format_double(row.s_rmse_actual);
    out += ',';
    out += format_double(row.s_rmse_potential);
    out += ',';
    out += row.on_front ? "true" : "false";
    out += '\n';
  }
  return out;
}

namespace {

struct AxisRange {
  double lo, hi;
};

// Linear axis with 5% padding on each side; a zero span widens to a unit
// window so single points still land mid-plot.
AxisRange padded_range(double min, double max) {
  if (min == max) return {min - 0.5, max + 0.5};
  const double pad = 0.05 * (max - min);
  return {min - pad, max + pad};
}

}  // namespace

std::string scatter_svg(const std::vector<EnsembleRow>& rows) {
  if (rows.empty()) throw std::invalid_argument("scatter_svg: no rows");
  constexpr double kWidth = 800.0;
  constexpr double kHeight = 600.0;

  double min_x = std::numeric_limits<double>::infinity(), max_x = -min_x;
  double min_y = min_x, max_y = -min_x;
  double min_s = min_x, max_s = -min_x;
  for (const auto& row : rows) {
    if (!std::isfinite(row.nmae) || !std::isfinite(row.nrmse)) continue;
    min_x = std::min(min_x, row.nmae);
    max_x = std::max(max_x, row.nmae);
    min_y = std::min(min_y, row.nrmse);
    max_y = std::max(max_y, row.nrmse);
    if (std::isfinite(row.s_rmse_potential)) {
      min_s = std::min(min_s, row.s_rmse_potential);
      max_s = std::max(max_s, row.s_rmse_potential);
    }
  }
  if (!std::isfinite(min_x)) throw std::invalid_argument("scatter_svg: no finite rows");
  const AxisRange xr = padded_range(min_x, max_x);
  const AxisRange yr = padded_range(min_y, max_y);

  char buf[256];
  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
  svg += "<text x=\"400\" y=\"594\" text-anchor=\"middle\" font-size=\"14\" "
         "fill=\"#333\">nMAE</text>\n";
  svg += "<text x=\"14\" y=\"300\" text-anchor=\"middle\" font-size=\"14\" fill=\"#333\" "
         "transform=\"rotate(-90 14 300)\">nRMSE</text>\n";

  for (const auto& row : rows) {
    if (!std::isfinite(row.nmae) || !std::isfinite(row.nrmse)) continue;
    const double px = (row.nmae - xr.lo) / (xr.hi - xr.lo) * kWidth;
    const double py = kHeight - (row.nrmse - yr.lo) / (yr.hi - yr.lo) * kHeight;
    // Grayscale ramp: lightest at the minimum potential skill, darkest at
    // the maximum; a degenerate ramp renders mid-gray.
    double lightness = 50.0;
    if (std::isfinite(row.s_rmse_potential) && max_s > min_s) {
      lightness = 85.0 - 70.0 * (row.s_rmse_potential - min_s) / (max_s - min_s);
    } else if (std::isfinite(row.s_rmse_potential)) {
      lightness = 50.0;
    } else {
      lightness = 85.0;
    }
    std::snprintf(buf, sizeof(buf),
                  "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"4\" fill=\"hsl(0, 0%%, %.1f%%)\"%s/>\n",
                  px, py, lightness,
                  row.on_front ? " stroke=\"red\" stroke-width=\"1.5\"" : "");
    svg += buf;
  }
  svg += "</svg>\n";
  return svg;
}

void scatter_export(const std::vector<EnsembleRow>& rows, const std::string& csv_path,
                    const std::optional<std::string>& svg_path) {
  if (rows.empty()) throw std::invalid_argument("scatter_export: no rows");
  {
    std::ofstream out(csv_path);
    if (!out) throw DataError("cannot write " + csv_path);
    out << scatter_csv(rows);
    if (!out) throw DataError("failed writing " + csv_path);
  }
  if (svg_path) {
    std::ofstream out(*svg_path);
    if (!out) throw DataError("cannot write " + *svg_path);
    out << scatter_svg(rows);
    if (!out) throw DataError("failed writing " + *svg_path);
  }
}

}  // namespace skillver
