#pragma once

/// @file duhamel.hpp
/// The bilinear Duhamel operator
///   B(f, g)(t) = -int_0^t exp((t - s) Delta) P div(f (x) g)(s) ds,
/// Picard iterates and the localized expansion terms.

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "nslab/evolution/trajectory.hpp"

namespace nslab::evolution {

/// Weights w_i with int_{x_0}^{x_m} p = sum w_i p(x_i) for every polynomial
/// of degree <= m interpolating at the given nodes.
std::vector<double> interpolatory_weights(std::span<const double> nodes);

/// B(f, g) at every node of the shared schedule, which must start at t = 0.
///
/// Even nodes use composite Simpson panels from 0; odd nodes use one
/// four-point panel on [t_0, t_3] followed by Simpson panels (node 1 uses
/// the trapezoid rule). The integral is carried forward by the exact heat
/// factor, so cost is linear in the number of nodes and only three
/// integrand values are live at a time.
Trajectory duhamel_series(const Trajectory& f, const Trajectory& g, bool symmetric,
                          FlowTag tag = FlowTag::derived());

/// B(f, g)(t). Requires at least 9 shared nodes in [0, t].
VectorField duhamel_B(const Trajectory& f, const Trajectory& g, double t, bool symmetric);

/// P_0 = exp(t Delta) u0 and P_k = P_0 + B(P_{k-1}, P_{k-1}) on `times`.
std::vector<Trajectory> picard_iterates(const VectorField& u0, int k_max,
                                        std::span<const double> times);

/// Radial C^2 cutoff: 1 for |x - c| <= r_in, 0 for |x - c| >= r_out, with a
/// quintic smoothstep between. Distances use the nearest periodic image.
ScalarField radial_cutoff(const Grid3& grid, std::array<double, 3> center, double r_in,
                          double r_out);

/// Nested balls B_Omega (radius omega) inside supp chi inside B (radius ball).
struct CutoffGeometry {
  std::array<double, 3> center{};
  double omega_radius = 0.0;
  double ball_radius = 0.0;
};

struct ExpansionTerms {
  Trajectory p1;
  Trajectory p2_tilde;
  Trajectory p_omega;
};

/// P_1, P2~ = B(P_0, B(P_0, P_0) chi) + B(B(P_0, P_0), P_0 chi) and
/// P_Omega = P_1 + P2~, all computed from u0 alone. Values of chi must lie
/// in [0, 1]; when `geometry` is given the support nesting is verified.
ExpansionTerms expansion_terms(const VectorField& u0, const ScalarField& chi,
                               std::span<const double> times,
                               const std::optional<CutoffGeometry>& geometry = std::nullopt);

/// Minimum-image distance from a grid node coordinate to `center`.
double periodic_distance(const Grid3& grid, std::array<double, 3> x, std::array<double, 3> center);

}  // namespace nslab::evolution
