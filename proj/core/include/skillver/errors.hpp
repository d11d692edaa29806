#pragma once

#include <stdexcept>
#include <string>

namespace skillver {

/// Input data cannot be used: missing file or column, unparsable cell,
/// zero valid rows, non-monotonic timestamps, series too short for the
/// requested lag.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A statistic required by the computation is undefined on this sample:
/// constant forecast or observation side, |gamma(h)| = 1, zero persistence
/// MAE. Distinct from DataError so callers can report it separately.
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace skillver
