#pragma once

/// @file operators.hpp
/// Fourier multipliers on the periodic box. All outputs are spectral.

#include <array>
#include <span>
#include <vector>

#include "nslab/spectral/fields.hpp"

namespace nslab::spectral {

/// Heat multiplier exp(-|k|^2 t) together with the Leray tensor per mode.
class PropagatorSymbol {
 public:
  PropagatorSymbol(const Grid3& grid, double t);
  double time() const noexcept { return t_; }
  std::span<const double> multiplier() const noexcept { return multiplier_; }
  /// I - k k^T / |k|^2 for the mode at (i1, i2, l); identity at k = 0.
  std::array<double, 9> projection(int i1, int i2, int l) const;

 private:
  Grid3 grid_;
  double t_;
  std::vector<double> multiplier_;
};

VectorField leray_project(const VectorField& field);
/// exp(t Delta) applied to each component; t >= 0.
VectorField heat_semigroup(const VectorField& field, double t);
/// |k|^s per mode. For s > 0 the mean is sent to zero; for s < 0 a nonzero
/// mean is rejected.
VectorField fractional_laplacian(const VectorField& field, double s);
/// exp(t Delta) P (div T) with (div T)_i = d_j T_ij.
VectorField oseen_propagate(const TensorField& tensor, double t);
/// Zeroes every mode with some |m_i| > n/3.
VectorField dealias(const VectorField& field);
void dealias_in_place(const Grid3& grid, std::span<Complex> coefficients);

/// (div T)_i = d_j T_ij.
VectorField divergence(const TensorField& tensor);
VectorField gradient(const ScalarField& scalar);
VectorField curl(const VectorField& field);
/// Physical samples of d_j u_i, stored at index 3 * i + j.
std::array<std::vector<double>, 9> velocity_gradient(const VectorField& field);

/// max over modes of |k . u_hat(k)|.
double max_divergence(const VectorField& field);
/// max over modes and components of |u_hat(k)|.
double max_coefficient(const VectorField& field);
/// max over grid nodes of |u(x)| (Euclidean).
double max_magnitude(const VectorField& field);

}  // namespace nslab::spectral
