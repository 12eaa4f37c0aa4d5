#include "nslab/analysis/fitting.hpp"

#include <cmath>

#include "nslab/errors.hpp"

namespace nslab::analysis {

RateFit rate_fit(const Series& series, FitWindow window) {
  require(window.t_min < window.t_max, "fit window must have t_min < t_max");
  std::vector<double> x, y;
  for (const auto& s : series) {
    if (!window.contains(s.t)) continue;
    require(s.t > 0.0, "fit times must be positive");
    require(s.value > 0.0 && std::isfinite(s.value), "fit values must be positive");
    x.push_back(std::log(s.t));
    y.push_back(std::log(s.value));
  }
  require(x.size() >= 3, "rate fit needs at least 3 points inside the window");
  const double m = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  require(sxx > 0.0, "fit times inside the window are not distinct");
  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.window = window;
  fit.n_points = static_cast<int>(x.size());
  if (syy == 0.0) {
    fit.r_squared = 1.0;
  } else {
    double ss_res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = y[i] - (fit.intercept + fit.slope * x[i]);
      ss_res += r * r;
    }
    fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  }
  return fit;
}

}  // namespace nslab::analysis
