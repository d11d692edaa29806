#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace skillver {

/// Verification ground truth: ordered observation values, optionally with
/// timestamps (validated strictly increasing, never used in arithmetic).
struct ObservationSeries {
  std::vector<double> values;
  std::optional<std::vector<std::string>> timestamps;

  std::size_t size() const { return values.size(); }
};

/// A named forecast column, index-aligned to the observation rows.
/// Missing entries are marked with NaN and excluded when pairing.
struct ForecastSeries {
  std::string name;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
};

/// Lag-aligned (forecast, observation) pairs after missing-data exclusion.
/// All metric computation runs on this carrier; every retained pair is finite.
struct PairedSeries {
  std::vector<double> f;
  std::vector<double> x;
  std::size_t dropped = 0;  // rows excluded while pairing

  std::size_t n() const { return f.size(); }
};

struct IngestReport {
  std::size_t rows_read = 0;
  std::size_t rows_dropped = 0;
  std::vector<std::string> columns;  // header names of the file
  std::optional<double> qc_threshold_applied;
};

struct IngestResult {
  ObservationSeries obs;
  std::vector<ForecastSeries> forecasts;
  IngestReport report;
};

/// Reads a CSV table (header row mandatory, '.' decimal separator, empty
/// cell or literal NaN = missing). Rows with a missing/non-finite cell in
/// any selected column are excluded, as are rows with observation below
/// `qc_min_obs` when given. An empty `fcst_cols` selects every column
/// except the observation and `time` columns. A `time` column, when
/// present, must be strictly increasing over the kept rows.
IngestResult ingest_csv(const std::string& path, const std::string& obs_col,
                        const std::vector<std::string>& fcst_cols,
                        std::optional<double> qc_min_obs = std::nullopt);

/// Pairs a forecast with the observations, keeping only rows finite on both
/// sides. Order is preserved. Throws DataError when no valid pair remains.
PairedSeries pair(const ObservationSeries& obs, const ForecastSeries& fcst);

/// Returns the pairs (x_{t-h}, x_t) for t = h .. n-1, with the lagged value
/// in the forecast slot. Lag h counts row steps, not wall time.
PairedSeries lag_pairs(const ObservationSeries& obs, int h);

}  // namespace skillver
