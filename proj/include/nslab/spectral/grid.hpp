#pragma once

/// @file grid.hpp
/// Periodic box geometry and spectral wavenumber tables.

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace nslab {
using Complex = std::complex<double>;
}

namespace nslab::spectral {

/// Periodic box [0, L)^3 with n samples per axis.
///
/// Physical arrays are row-major with index (i1 * n + i2) * n + i3.
/// Spectral arrays use the real-to-complex half layout (n, n, n/2 + 1).
/// Copies share the immutable wavenumber tables.
class Grid3 {
 public:
  Grid3(int n, double length);

  int n() const noexcept { return n_; }
  double length() const noexcept { return length_; }
  double spacing() const noexcept { return length_ / n_; }
  double cell_measure() const noexcept;
  double volume() const noexcept { return length_ * length_ * length_; }
  int half_modes() const noexcept { return n_ / 2 + 1; }
  std::size_t physical_size() const noexcept;
  std::size_t spectral_size() const noexcept;

  std::size_t physical_index(int i1, int i2, int i3) const noexcept {
    return (static_cast<std::size_t>(i1) * n_ + i2) * n_ + i3;
  }
  std::size_t spectral_index(int i1, int i2, int l) const noexcept {
    return (static_cast<std::size_t>(i1) * n_ + i2) * half_modes() + l;
  }
  double coordinate(int index) const noexcept { return index * spacing(); }

  /// Signed mode number in [-n/2, n/2) for an FFT-ordered axis index.
  int mode(int index) const noexcept { return index < n_ / 2 ? index : index - n_; }
  double wavenumber(int index) const noexcept;
  /// Wavenumber used by odd operators; zero on the Nyquist mode.
  double derivative_wavenumber(int index) const noexcept;

  /// Derivative wavenumbers for the two full axes (n entries each).
  std::span<const double> kd_full() const noexcept { return tables_->kd_full; }
  /// Derivative wavenumbers for the half axis (n/2 + 1 entries).
  std::span<const double> kd_half() const noexcept { return tables_->kd_half; }
  /// |k|^2 per spectral entry, using true Nyquist wavenumbers.
  std::span<const double> k_squared() const noexcept { return tables_->k_squared; }
  /// Parseval multiplicity of a half-axis index (1 or 2).
  double half_weight(int l) const noexcept { return (l == 0 || l == n_ / 2) ? 1.0 : 2.0; }
  /// True when the mode survives two-thirds truncation.
  bool resolved(int i1, int i2, int l) const noexcept;

  bool operator==(const Grid3& other) const noexcept {
    return n_ == other.n_ && length_ == other.length_;
  }

 private:
  struct Tables {
    std::vector<double> kd_full;
    std::vector<double> kd_half;
    std::vector<double> k_squared;
  };
  int n_;
  double length_;
  std::shared_ptr<const Tables> tables_;
};

Grid3 make_grid(int n, double length);

}  // namespace nslab::spectral
