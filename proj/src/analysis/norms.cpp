#include "nslab/analysis/norms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "nslab/errors.hpp"
#include "nslab/spectral/operators.hpp"

namespace nslab::analysis {
namespace {

double lp_from_values(std::span<const double> values, double cell, double p) {
  require(p >= 1.0, "Lebesgue index must be at least 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
  }
  double scale = 0.0;
  for (double v : values) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  // scaled to avoid overflow for large p
  double sum = 0.0;
  for (double v : values) sum += std::pow(std::abs(v) / scale, p);
  return scale * std::pow(sum * cell, 1.0 / p);
}

}  // namespace

std::vector<double> magnitudes(const VectorField& field) {
  const VectorField f = field.to_physical();
  const auto a = f.physical(0), b = f.physical(1), c = f.physical(2);
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    out[i] = std::sqrt(a[i] * a[i] + b[i] * b[i] + c[i] * c[i]);
  return out;
}

double lp_norm(const VectorField& field, double p) {
  return lp_from_values(magnitudes(field), field.grid().cell_measure(), p);
}

double lp_norm(const ScalarField& field, double p) {
  return lp_from_values(field.values(), field.grid().cell_measure(), p);
}

double weak_lp_from_magnitudes(std::vector<double> values, double cell, double p) {
  require(p > 1.0 && std::isfinite(p), "weak Lebesgue index must lie in (1, inf)");
  std::sort(values.begin(), values.end(), std::greater<>());
  double best = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = std::abs(values[i]);
    if (v == 0.0) break;
    best = std::max(best, v * std::pow(static_cast<double>(i + 1) * cell, 1.0 / p));
  }
  return best;
}

double weak_lp_norm(const VectorField& field, double p) {
  return weak_lp_from_magnitudes(magnitudes(field), field.grid().cell_measure(), p);
}

double weak_lp_norm(const ScalarField& field, double p) {
  std::vector<double> v(field.values().begin(), field.values().end());
  for (double& x : v) x = std::abs(x);
  return weak_lp_from_magnitudes(std::move(v), field.grid().cell_measure(), p);
}

double sobolev_seminorm(const VectorField& field, double s) {
  require(std::isfinite(s) && s >= 0.0, "Sobolev order must be nonnegative");
  return lp_norm(spectral::fractional_laplacian(field, s), 2.0);
}

double spacetime_norm_from_values(std::span<const double> times, std::span<const double> norms,
                                  double r) {
  require(r >= 1.0, "time index must be at least 1");
  require(times.size() == norms.size(), "times and values differ in length");
  require(times.size() >= 3, "space-time norm needs at least 3 snapshots");
  for (std::size_t i = 1; i < times.size(); ++i)
    require(times[i] > times[i - 1], "snapshot times must increase");
  double integral = 0.0;
  for (std::size_t i = 1; i < times.size(); ++i)
    integral += 0.5 * (times[i] - times[i - 1]) * (std::pow(norms[i], r) + std::pow(norms[i - 1], r));
  return std::pow(integral, 1.0 / r);
}

double spacetime_norm(std::span<const double> times, std::span<const VectorField> snapshots,
                      double r, double q) {
  require(q >= 1.0, "space index must be at least 1");
  require(times.size() == snapshots.size(), "times and snapshots differ in length");
  std::vector<double> norms;
  norms.reserve(snapshots.size());
  for (const auto& s : snapshots) norms.push_back(lp_norm(s, q));
  return spacetime_norm_from_values(times, norms, r);
}

}  // namespace nslab::analysis
