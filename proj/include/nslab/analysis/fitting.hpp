#pragma once

/// @file fitting.hpp
/// Power-law fits on log-log data.

#include <vector>

namespace nslab::analysis {

struct SeriesPoint {
  double t;
  double value;
};
using Series = std::vector<SeriesPoint>;

struct FitWindow {
  double t_min;
  double t_max;
  bool contains(double t) const noexcept { return t >= t_min && t <= t_max; }
};

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  FitWindow window{};
  int n_points = 0;
};

/// Unweighted least squares of log(value) against log(t) over points whose
/// t lies in `window`.
RateFit rate_fit(const Series& series, FitWindow window);

}  // namespace nslab::analysis
