#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skillver/series.hpp"

namespace skillver {

/// One evaluated forecast set. Degenerate sets (constant forecast, too few
/// valid pairs) keep their row with NaN in the undefined fields and the
/// `degenerate` flag raised.
struct EnsembleRow {
  std::string name;
  double nmae = 0.0;
  double nrmse = 0.0;
  double rho = 0.0;
  double s_rmse_actual = 0.0;
  double s_rmse_potential = 0.0;
  bool on_front = false;
  bool degenerate = false;
};

/// Scores every forecast against the same observations and marks the
/// MAE/RMSE Pareto front. Output order equals input order.
std::vector<EnsembleRow> evaluate_ensemble(const ObservationSeries& obs,
                                           const std::vector<ForecastSeries>& forecasts,
                                           int h, double normalizer);

/// Pareto efficiency under (mae, rmse) minimization: point i is on the
/// front iff no point is <= in both coordinates and < in at least one.
/// Exact duplicates of a front point all stay on the front. Sort-and-sweep,
/// O(n log n).
std::vector<bool> pareto_front(const std::vector<std::pair<double, double>>& points);

std::string scatter_csv(const std::vector<EnsembleRow>& rows);
std::string scatter_svg(const std::vector<EnsembleRow>& rows);

/// Writes the scatter CSV and, when a path is given, the SVG figure
/// (800x600 viewBox, x = nMAE, y = nRMSE, 5% padded linear axes, grayscale
/// fill by potential skill, Pareto points stroked red).
void scatter_export(const std::vector<EnsembleRow>& rows, const std::string& csv_path,
                    const std::optional<std::string>& svg_path = std::nullopt);

}  // namespace skillver
