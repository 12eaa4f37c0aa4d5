#pragma once

/// @file fields.hpp
/// Scalar, vector and rank-2 tensor fields on a Grid3.

#include <array>
#include <span>
#include <vector>

#include "nslab/spectral/grid.hpp"

namespace nslab::spectral {

enum class Representation { physical, spectral };
enum class Direction { forward, inverse };

/// Real scalar field sampled on the physical grid.
class ScalarField {
 public:
  ScalarField(Grid3 grid, std::vector<double> values);
  static ScalarField zeros(const Grid3& grid);
  /// Samples f(x1, x2, x3) at the grid nodes.
  template <class F>
  static ScalarField sample(const Grid3& grid, F&& f);

  const Grid3& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

 private:
  Grid3 grid_;
  std::vector<double> values_;
};

/// Three-component real vector field, stored either physically or as
/// half-spectrum Fourier coefficients.
class VectorField {
 public:
  using PhysicalData = std::array<std::vector<double>, 3>;
  using SpectralData = std::array<std::vector<Complex>, 3>;

  static VectorField zeros(const Grid3& grid, Representation rep = Representation::physical);
  static VectorField from_physical(const Grid3& grid, PhysicalData data);
  static VectorField from_spectral(const Grid3& grid, SpectralData data, bool solenoidal = false);
  /// Samples f(x1, x2, x3) -> std::array<double, 3> at the grid nodes.
  template <class F>
  static VectorField sample(const Grid3& grid, F&& f);

  const Grid3& grid() const noexcept { return grid_; }
  Representation representation() const noexcept { return rep_; }
  bool is_physical() const noexcept { return rep_ == Representation::physical; }
  bool is_spectral() const noexcept { return rep_ == Representation::spectral; }
  /// Set only by operations whose output is divergence-free by construction.
  bool solenoidal() const noexcept { return solenoidal_; }
  void mark_solenoidal(bool flag) noexcept { solenoidal_ = flag; }

  std::span<const double> physical(int c) const;
  std::span<double> physical(int c);
  std::span<const Complex> spectral(int c) const;
  std::span<Complex> spectral(int c);
  const SpectralData& spectral_data() const;
  SpectralData& spectral_data();

  VectorField to_spectral() const;
  VectorField to_physical() const;

  VectorField& operator+=(const VectorField& other);
  VectorField& operator-=(const VectorField& other);
  VectorField& operator*=(double factor);

 private:
  VectorField(Grid3 grid, Representation rep);
  Grid3 grid_;
  Representation rep_;
  PhysicalData phys_;
  SpectralData spec_;
  bool solenoidal_ = false;
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double factor, VectorField a);

/// Changes representation. Throws on non-finite input or a direction that
/// does not match the current representation.
VectorField transform(const VectorField& field, Direction direction);

/// Pointwise product with a scalar field; result is physical.
VectorField multiply(const VectorField& field, const ScalarField& weight);

/// Rank-2 tensor field T_ij with components stored at index 3 * i + j.
class TensorField {
 public:
  using SpectralData = std::array<std::vector<Complex>, 9>;

  TensorField(Grid3 grid, SpectralData data);
  const Grid3& grid() const noexcept { return grid_; }
  std::span<const Complex> component(int i, int j) const { return data_[3 * i + j]; }
  std::span<Complex> component(int i, int j) { return data_[3 * i + j]; }

 private:
  Grid3 grid_;
  SpectralData data_;
};

/// Spectral coefficients of f (x) g, or of (f (x) g + g (x) f) / 2 when
/// `symmetric`. Products are formed on the grid and then dealiased.
TensorField tensor_product(const VectorField& f, const VectorField& g, bool symmetric);

// ---------------------------------------------------------------------------

template <class F>
ScalarField ScalarField::sample(const Grid3& grid, F&& f) {
  std::vector<double> values(grid.physical_size());
  const int n = grid.n();
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2)
      for (int i3 = 0; i3 < n; ++i3)
        values[grid.physical_index(i1, i2, i3)] =
            f(grid.coordinate(i1), grid.coordinate(i2), grid.coordinate(i3));
  return ScalarField(grid, std::move(values));
}

template <class F>
VectorField VectorField::sample(const Grid3& grid, F&& f) {
  PhysicalData data;
  for (auto& c : data) c.resize(grid.physical_size());
  const int n = grid.n();
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2)
      for (int i3 = 0; i3 < n; ++i3) {
        const std::size_t idx = grid.physical_index(i1, i2, i3);
        const std::array<double, 3> v =
            f(grid.coordinate(i1), grid.coordinate(i2), grid.coordinate(i3));
        for (int c = 0; c < 3; ++c) data[c][idx] = v[c];
      }
  return from_physical(grid, std::move(data));
}

}  // namespace nslab::spectral
