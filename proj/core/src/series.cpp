#include "skillver/series.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

#include "skillver/errors.hpp"

namespace skillver {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    std::string_view cell(line.data() + start,
                          (comma == std::string::npos ? line.size() : comma) - start);
    cells.emplace_back(trim(cell));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return cells;
}

bool is_missing_token(std::string_view cell) {
  if (cell.empty()) return true;
  if (cell.size() == 3) {
    auto lower = [](char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); };
    return lower(cell[0]) == 'n' && lower(cell[1]) == 'a' && lower(cell[2]) == 'n';
  }
  return false;
}

// Parses one numeric cell. Missing markers and non-finite values map to NaN;
// anything else that fails to parse is a hard error with its location.
double parse_cell(std::string_view cell, std::size_t row, const std::string& column) {
  if (is_missing_token(cell)) return std::nan("");
  double value = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    std::ostringstream msg;
    msg << "cannot parse numeric cell '" << std::string(cell) << "' (row " << row
        << ", column '" << column << "')";
    throw DataError(msg.str());
  }
  if (!std::isfinite(value)) return std::nan("");
  return value;
}

std::size_t find_column(const std::vector<std::string>& header, const std::string& name,
                        const std::string& path) {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) {
    throw DataError("column '" + name + "' not found in " + path);
  }
  return static_cast<std::size_t>(it - header.begin());
}

// Timestamps compare numerically when every cell parses as a number
// (integer index), lexicographically otherwise (ISO-8601 sorts that way).
void check_timestamps_increasing(const std::vector<std::string>& times) {
  bool all_numeric = true;
  std::vector<double> numeric(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    const char* first = times[i].data();
    const char* last = first + times[i].size();
    auto [ptr, ec] = std::from_chars(first, last, numeric[i]);
    if (ec != std::errc{} || ptr != last) {
      all_numeric = false;
      break;
    }
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    bool increasing = all_numeric ? numeric[i - 1] < numeric[i] : times[i - 1] < times[i];
    if (!increasing) {
      throw DataError("time column is not strictly increasing at row " + std::to_string(i));
    }
  }
}

}  // namespace

IngestResult ingest_csv(const std::string& path, const std::string& obs_col,
                        const std::vector<std::string>& fcst_cols,
                        std::optional<double> qc_min_obs) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open input file: " + path);

  std::string line;
  if (!std::getline(in, line)) throw DataError("empty file (header row required): " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::vector<std::string> header = split_row(line);

  const std::size_t obs_idx = find_column(header, obs_col, path);

  auto time_it = std::find(header.begin(), header.end(), "time");
  const bool has_time = time_it != header.end();
  const std::size_t time_idx = has_time ? static_cast<std::size_t>(time_it - header.begin()) : 0;

  std::vector<std::string> selected = fcst_cols;
  if (selected.empty()) {
    for (const auto& name : header) {
      if (name != obs_col && name != "time") selected.push_back(name);
    }
    if (selected.empty()) throw DataError("no forecast columns in " + path);
  }
  std::vector<std::size_t> fcst_idx;
  fcst_idx.reserve(selected.size());
  for (const auto& name : selected) fcst_idx.push_back(find_column(header, name, path));

  IngestResult result;
  result.report.columns = header;
  result.report.qc_threshold_applied = qc_min_obs;
  result.forecasts.resize(selected.size());
  for (std::size_t k = 0; k < selected.size(); ++k) result.forecasts[k].name = selected[k];
  std::vector<std::string> times;

  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    ++row;
    const std::vector<std::string> cells = split_row(line);
    if (cells.size() != header.size()) {
      throw DataError("row " + std::to_string(row) + " has " + std::to_string(cells.size()) +
                      " cells, expected " + std::to_string(header.size()));
    }

    const double obs_value = parse_cell(cells[obs_idx], row, obs_col);
    std::vector<double> fcst_values(fcst_idx.size());
    bool valid = std::isfinite(obs_value);
    for (std::size_t k = 0; k < fcst_idx.size(); ++k) {
      fcst_values[k] = parse_cell(cells[fcst_idx[k]], row, selected[k]);
      valid = valid && std::isfinite(fcst_values[k]);
    }
    if (has_time && is_missing_token(cells[time_idx])) valid = false;
    if (valid && qc_min_obs && obs_value < *qc_min_obs) valid = false;

    if (!valid) {
      ++result.report.rows_dropped;
      continue;
    }
    result.obs.values.push_back(obs_value);
    for (std::size_t k = 0; k < fcst_idx.size(); ++k) {
      result.forecasts[k].values.push_back(fcst_values[k]);
    }
    if (has_time) times.push_back(cells[time_idx]);
  }
  result.report.rows_read = row;

  if (result.obs.values.empty()) throw DataError("zero valid rows in " + path);
  if (has_time) {
    check_timestamps_increasing(times);
    result.obs.timestamps = std::move(times);
  }
  return result;
}

PairedSeries pair(const ObservationSeries& obs, const ForecastSeries& fcst) {
  if (obs.size() != fcst.size()) {
    throw DataError("forecast '" + fcst.name + "' has " + std::to_string(fcst.size()) +
                    " rows, observations have " + std::to_string(obs.size()));
  }
  PairedSeries p;
  p.f.reserve(obs.size());
  p.x.reserve(obs.size());
  for (std::size_t i = 0; i < obs.size(); ++i) {
    if (std::isfinite(fcst.values[i]) && std::isfinite(obs.values[i])) {
      p.f.push_back(fcst.values[i]);
      p.x.push_back(obs.values[i]);
    } else {
      ++p.dropped;
    }
  }
  if (p.f.empty()) throw DataError("no valid pairs for forecast '" + fcst.name + "'");
  return p;
}

PairedSeries lag_pairs(const ObservationSeries& obs, int h) {
  if (h < 1) throw std::invalid_argument("lag must be >= 1");
  const std::size_t n = obs.size();
  if (static_cast<std::size_t>(h) + 2 > n) {
    throw DataError("series of length " + std::to_string(n) + " too short for lag " +
                    std::to_string(h));
  }
  for (double v : obs.values) {
    if (!std::isfinite(v)) throw DataError("observations contain non-finite values");
  }
  PairedSeries p;
  const std::size_t lag = static_cast<std::size_t>(h);
  p.f.assign(obs.values.begin(), obs.values.end() - lag);
  p.x.assign(obs.values.begin() + lag, obs.values.end());
  return p;
}

}  // namespace skillver
