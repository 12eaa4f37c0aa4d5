#pragma once

/// @file norms.hpp
/// Grid quadratures of Lebesgue, weak-Lebesgue, Sobolev and mixed norms.

#include <span>

#include "nslab/spectral/fields.hpp"

namespace nslab::analysis {

using spectral::ScalarField;
using spectral::VectorField;

/// (sum |f|^p h^3)^(1/p), or max |f| for p = infinity.
double lp_norm(const VectorField& field, double p);
double lp_norm(const ScalarField& field, double p);

/// max_i a_i (i h^3)^(1/p) over magnitudes sorted decreasingly; the discrete
/// sup over lambda of lambda * |{|f| > lambda}|^(1/p).
double weak_lp_norm(const VectorField& field, double p);
double weak_lp_norm(const ScalarField& field, double p);

/// || |k|^s u_hat ||_2.
double sobolev_seminorm(const VectorField& field, double s);

/// (int ||u(t)||_q^r dt)^(1/r) by the trapezoid rule over the given nodes.
double spacetime_norm(std::span<const double> times, std::span<const VectorField> snapshots,
                      double r, double q);
/// Same quadrature from precomputed ||u(t)||_q values.
double spacetime_norm_from_values(std::span<const double> times, std::span<const double> norms,
                                  double r);

/// Euclidean magnitudes |f(x)| at the grid nodes.
std::vector<double> magnitudes(const VectorField& field);

/// Weak-L^p quasi-norm of nonnegative cell values with cell measure `cell`.
double weak_lp_from_magnitudes(std::vector<double> values, double cell, double p);

}  // namespace nslab::analysis
