#include "nslab/calderon/splitting.hpp"

#include <cmath>

#include "nslab/analysis/norms.hpp"
#include "nslab/errors.hpp"
#include "nslab/spectral/operators.hpp"

namespace nslab::calderon {

SplitPair lorentz_split(const VectorField& u0, double threshold, double alpha) {
  require(std::isfinite(threshold) && threshold > 0.0, "threshold must be positive");
  require(alpha >= 1.0, "alpha must be at least 1");
  const VectorField u = u0.to_physical();
  VectorField b = u;
  const auto mags = analysis::magnitudes(u);
  double truncated_sup = 0.0;
  for (std::size_t i = 0; i < mags.size(); ++i) {
    const double scale = mags[i] > threshold ? threshold / mags[i] : 1.0;
    for (int c = 0; c < 3; ++c) b.physical(c)[i] *= scale;
    truncated_sup = std::max(truncated_sup, std::min(mags[i], threshold));
  }
  SplitPair out{threshold, spectral::leray_project(b), u0.to_spectral(), alpha};
  out.u_tilde -= out.u_bar;
  out.u_tilde.mark_solenoidal(true);
  out.bar_alpha_norm = analysis::lp_norm(out.u_bar, alpha);
  out.bar_sup = spectral::max_magnitude(out.u_bar);
  out.tilde_l2_norm = analysis::lp_norm(out.u_tilde, 2.0);
  out.truncated_sup = truncated_sup;
  out.truncated_alpha_norm = analysis::lp_norm(b, alpha);
  out.excess_l2_norm = analysis::lp_norm(u - b, 2.0);
  out.projection_factor = out.bar_sup / threshold;
  return out;
}

double optimal_threshold(double p, double alpha, double t, double u0_norm) {
  require(p > 2.0 && p <= 3.0, "p must lie in (2, 3]");
  require(alpha > 3.0 && alpha <= 4.0, "alpha must lie in (3, 4]");
  require(t > 0.0 && std::isfinite(t), "t must be positive");
  require(u0_norm > 0.0 && std::isfinite(u0_norm), "datum norm must be positive");
  return std::pow(t, (12.0 - 4.0 * alpha) / (8.0 * (alpha - p))) * std::pow(u0_norm, p / (p - alpha));
}

std::vector<ScalingRow> scaling_audit(const VectorField& u0, double p,
                                      std::span<const double> thresholds, double alpha) {
  require(thresholds.size() >= 3, "scaling audit needs at least 3 thresholds");
  std::vector<ScalingRow> rows;
  for (double n : thresholds) {
    const SplitPair s = lorentz_split(u0, n, alpha);
    const double t2 = s.tilde_l2_norm * s.tilde_l2_norm;
    const double ba = std::pow(s.bar_alpha_norm, alpha);
    rows.push_back({n, t2, ba, t2 * std::pow(n, p - 2.0), ba * std::pow(n, p - alpha)});
  }
  return rows;
}

}  // namespace nslab::calderon
