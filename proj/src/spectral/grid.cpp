#include "nslab/spectral/grid.hpp"

#include <cmath>
#include <numbers>

#include "nslab/errors.hpp"

namespace nslab::spectral {

Grid3::Grid3(int n, double length) : n_(n), length_(length) {
  require(n >= 8 && n % 2 == 0, "grid size must be even and at least 8");
  require(std::isfinite(length) && length > 0.0, "box length must be positive");
  auto tables = std::make_shared<Tables>();
  tables->kd_full.resize(n);
  tables->kd_half.resize(n / 2 + 1);
  for (int i = 0; i < n; ++i) tables->kd_full[i] = derivative_wavenumber(i);
  for (int l = 0; l <= n / 2; ++l) tables->kd_half[l] = derivative_wavenumber(l);
  tables->k_squared.resize(spectral_size());
  const int nz = half_modes();
  for (int i1 = 0; i1 < n; ++i1) {
    const double k1 = wavenumber(i1);
    for (int i2 = 0; i2 < n; ++i2) {
      const double k2 = wavenumber(i2);
      for (int l = 0; l < nz; ++l) {
        const double k3 = wavenumber(l);
        tables->k_squared[spectral_index(i1, i2, l)] = k1 * k1 + k2 * k2 + k3 * k3;
      }
    }
  }
  tables_ = std::move(tables);
}

double Grid3::cell_measure() const noexcept {
  const double h = spacing();
  return h * h * h;
}

std::size_t Grid3::physical_size() const noexcept {
  return static_cast<std::size_t>(n_) * n_ * n_;
}

std::size_t Grid3::spectral_size() const noexcept {
  return static_cast<std::size_t>(n_) * n_ * half_modes();
}

double Grid3::wavenumber(int index) const noexcept {
  return 2.0 * std::numbers::pi * mode(index) / length_;
}

double Grid3::derivative_wavenumber(int index) const noexcept {
  return mode(index) == -n_ / 2 || index == n_ / 2 ? 0.0 : wavenumber(index);
}

bool Grid3::resolved(int i1, int i2, int l) const noexcept {
  const auto ok = [this](int m) { return 3 * std::abs(m) <= n_; };
  return ok(mode(i1)) && ok(mode(i2)) && ok(l == n_ / 2 ? -n_ / 2 : l);
}

Grid3 make_grid(int n, double length) { return Grid3(n, length); }

}  // namespace nslab::spectral
