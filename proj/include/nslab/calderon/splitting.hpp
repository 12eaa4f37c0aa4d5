#pragma once

/// @file splitting.hpp
/// Splitting of a datum into a bounded part and a square-integrable tail,
/// and the threshold that balances the two.

#include <span>
#include <vector>

#include "nslab/spectral/fields.hpp"

namespace nslab::calderon {

using spectral::VectorField;

struct SplitPair {
  double threshold = 0.0;  ///< N
  VectorField u_bar;       ///< P(u0 min(1, N / |u0|))
  VectorField u_tilde;     ///< u0 - u_bar
  double alpha = 4.0;
  double bar_alpha_norm = 0.0;       ///< ||u_bar||_alpha
  double bar_sup = 0.0;              ///< ||u_bar||_inf
  double tilde_l2_norm = 0.0;        ///< ||u_tilde||_2
  double truncated_sup = 0.0;        ///< ||b||_inf before projection, <= N
  double truncated_alpha_norm = 0.0; ///< ||b||_alpha before projection
  double excess_l2_norm = 0.0;       ///< ||u0 - b||_2 before projection
  double projection_factor = 0.0;    ///< ||u_bar||_inf / N
};

/// Amplitude truncation at level N followed by Leray projection.
SplitPair lorentz_split(const VectorField& u0, double threshold, double alpha = 4.0);

/// N = t^((12 - 4 alpha) / (8 (alpha - p))) * norm^(p / (p - alpha)) for
/// p in (2, 3], alpha in (3, 4].
double optimal_threshold(double p, double alpha, double t, double u0_norm);

struct ScalingRow {
  double threshold;
  double tilde_l2_squared;  ///< ||u_tilde||_2^2
  double bar_alpha_power;   ///< ||u_bar||_alpha^alpha
  double tilde_product;     ///< ||u_tilde||_2^2 N^(p - 2)
  double bar_product;       ///< ||u_bar||_alpha^alpha N^(p - alpha)
};

/// One row per threshold; requires at least three thresholds.
std::vector<ScalingRow> scaling_audit(const VectorField& u0, double p,
                                      std::span<const double> thresholds, double alpha = 4.0);

}  // namespace nslab::calderon
