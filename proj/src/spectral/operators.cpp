#include "nslab/spectral/operators.hpp"

#include <algorithm>
#include <cmath>

#include "nslab/errors.hpp"
#include "nslab/spectral/fft.hpp"

namespace nslab::spectral {
namespace {

constexpr Complex kI{0.0, 1.0};

// Calls f(index, k1, k2, k3, i1, i2, l) for every spectral entry, with
// derivative wavenumbers.
template <class F>
void for_each_mode(const Grid3& grid, F&& f) {
  const int n = grid.n();
  const int nz = grid.half_modes();
  const auto kx = grid.kd_full();
  const auto kz = grid.kd_half();
  std::size_t idx = 0;
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2)
      for (int l = 0; l < nz; ++l, ++idx) f(idx, kx[i1], kx[i2], kz[l], i1, i2, l);
}

void project_mode(double k1, double k2, double k3, Complex& u1, Complex& u2, Complex& u3) {
  const double kk = k1 * k1 + k2 * k2 + k3 * k3;
  if (kk == 0.0) return;
  const Complex kdotu = (k1 * u1 + k2 * u2 + k3 * u3) / kk;
  u1 -= k1 * kdotu;
  u2 -= k2 * kdotu;
  u3 -= k3 * kdotu;
}

}  // namespace

PropagatorSymbol::PropagatorSymbol(const Grid3& grid, double t) : grid_(grid), t_(t) {
  require(std::isfinite(t) && t >= 0.0, "propagator time must be nonnegative");
  const auto k2 = grid.k_squared();
  multiplier_.resize(k2.size());
  for (std::size_t i = 0; i < k2.size(); ++i) multiplier_[i] = std::exp(-k2[i] * t);
}

std::array<double, 9> PropagatorSymbol::projection(int i1, int i2, int l) const {
  const double k[3] = {grid_.kd_full()[i1], grid_.kd_full()[i2], grid_.kd_half()[l]};
  const double kk = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
  std::array<double, 9> p{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      p[3 * i + j] = (i == j ? 1.0 : 0.0) - (kk > 0.0 ? k[i] * k[j] / kk : 0.0);
  return p;
}

VectorField leray_project(const VectorField& field) {
  VectorField out = field.to_spectral();
  auto& u = out.spectral_data();
  for_each_mode(out.grid(), [&](std::size_t i, double k1, double k2, double k3, int, int, int) {
    project_mode(k1, k2, k3, u[0][i], u[1][i], u[2][i]);
  });
  out.mark_solenoidal(true);
  return out;
}

VectorField heat_semigroup(const VectorField& field, double t) {
  const PropagatorSymbol symbol(field.grid(), t);
  VectorField out = field.to_spectral();
  const auto m = symbol.multiplier();
  for (auto& c : out.spectral_data())
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= m[i];
  return out;
}

VectorField fractional_laplacian(const VectorField& field, double s) {
  require(std::isfinite(s), "fractional order must be finite");
  VectorField out = field.to_spectral();
  auto& u = out.spectral_data();
  if (s < 0.0) {
    const double scale = std::max(max_coefficient(out), 1e-300);
    for (int c = 0; c < 3; ++c)
      if (std::abs(u[c][0]) > 1e-12 * scale)
        throw InvalidArgument("negative fractional order requires a mean-free field");
  }
  const auto k2 = out.grid().k_squared();
  for (auto& c : u)
    for (std::size_t i = 0; i < c.size(); ++i)
      c[i] *= k2[i] == 0.0 ? (s == 0.0 ? 1.0 : 0.0) : std::pow(k2[i], 0.5 * s);
  return out;
}

VectorField divergence(const TensorField& tensor) {
  const Grid3& grid = tensor.grid();
  VectorField::SpectralData out;
  for (auto& c : out) c.assign(grid.spectral_size(), Complex{});
  for_each_mode(grid, [&](std::size_t idx, double k1, double k2, double k3, int, int, int) {
    for (int i = 0; i < 3; ++i)
      out[i][idx] = kI * (k1 * tensor.component(i, 0)[idx] + k2 * tensor.component(i, 1)[idx] +
                          k3 * tensor.component(i, 2)[idx]);
  });
  return VectorField::from_spectral(grid, std::move(out));
}

VectorField oseen_propagate(const TensorField& tensor, double t) {
  const PropagatorSymbol symbol(tensor.grid(), t);
  VectorField out = divergence(tensor);
  auto& u = out.spectral_data();
  const auto m = symbol.multiplier();
  for_each_mode(out.grid(), [&](std::size_t i, double k1, double k2, double k3, int, int, int) {
    project_mode(k1, k2, k3, u[0][i], u[1][i], u[2][i]);
    for (int c = 0; c < 3; ++c) u[c][i] *= m[i];
  });
  out.mark_solenoidal(true);
  return out;
}

void dealias_in_place(const Grid3& grid, std::span<Complex> coefficients) {
  require(coefficients.size() == grid.spectral_size(), "coefficient size does not match grid");
  const int n = grid.n();
  const int nz = grid.half_modes();
  std::size_t idx = 0;
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2)
      for (int l = 0; l < nz; ++l, ++idx)
        if (!grid.resolved(i1, i2, l)) coefficients[idx] = Complex{};
}

VectorField dealias(const VectorField& field) {
  VectorField out = field.to_spectral();
  for (auto& c : out.spectral_data()) dealias_in_place(out.grid(), c);
  return out;
}

VectorField gradient(const ScalarField& scalar) {
  const Grid3& grid = scalar.grid();
  std::vector<Complex> s(grid.spectral_size());
  FftEngine::for_size(grid.n()).forward(scalar.values(), s);
  VectorField::SpectralData out;
  for (auto& c : out) c.resize(grid.spectral_size());
  for_each_mode(grid, [&](std::size_t i, double k1, double k2, double k3, int, int, int) {
    out[0][i] = kI * k1 * s[i];
    out[1][i] = kI * k2 * s[i];
    out[2][i] = kI * k3 * s[i];
  });
  return VectorField::from_spectral(grid, std::move(out));
}

VectorField curl(const VectorField& field) {
  const VectorField in = field.to_spectral();
  const auto& u = in.spectral_data();
  VectorField::SpectralData out;
  for (auto& c : out) c.resize(in.grid().spectral_size());
  for_each_mode(in.grid(), [&](std::size_t i, double k1, double k2, double k3, int, int, int) {
    out[0][i] = kI * (k2 * u[2][i] - k3 * u[1][i]);
    out[1][i] = kI * (k3 * u[0][i] - k1 * u[2][i]);
    out[2][i] = kI * (k1 * u[1][i] - k2 * u[0][i]);
  });
  return VectorField::from_spectral(in.grid(), std::move(out), true);
}

std::array<std::vector<double>, 9> velocity_gradient(const VectorField& field) {
  const VectorField in = field.to_spectral();
  const Grid3& grid = in.grid();
  const auto& u = in.spectral_data();
  const FftEngine& fft = FftEngine::for_size(grid.n());
  std::array<std::vector<double>, 9> out;
  std::vector<Complex> d(grid.spectral_size());
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for_each_mode(grid, [&](std::size_t idx, double k1, double k2, double k3, int, int, int) {
        const double k = j == 0 ? k1 : (j == 1 ? k2 : k3);
        d[idx] = kI * k * u[i][idx];
      });
      out[3 * i + j].resize(grid.physical_size());
      fft.inverse(d, out[3 * i + j]);
    }
  }
  return out;
}

double max_divergence(const VectorField& field) {
  const VectorField in = field.to_spectral();
  const auto& u = in.spectral_data();
  double worst = 0.0;
  for_each_mode(in.grid(), [&](std::size_t i, double k1, double k2, double k3, int, int, int) {
    worst = std::max(worst, std::abs(k1 * u[0][i] + k2 * u[1][i] + k3 * u[2][i]));
  });
  return worst;
}

double max_coefficient(const VectorField& field) {
  const VectorField in = field.to_spectral();
  double worst = 0.0;
  for (const auto& c : in.spectral_data())
    for (const Complex& v : c) worst = std::max(worst, std::abs(v));
  return worst;
}

double max_magnitude(const VectorField& field) {
  const VectorField in = field.to_physical();
  const auto a = in.physical(0), b = in.physical(1), c = in.physical(2);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, a[i] * a[i] + b[i] * b[i] + c[i] * c[i]);
  return std::sqrt(worst);
}

}  // namespace nslab::spectral
