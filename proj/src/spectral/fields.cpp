#include "nslab/spectral/fields.hpp"

#include <cmath>

#include "nslab/errors.hpp"
#include "nslab/spectral/fft.hpp"
#include "nslab/spectral/operators.hpp"

namespace nslab::spectral {

ScalarField::ScalarField(Grid3 grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  require(values_.size() == grid_.physical_size(), "scalar field size does not match grid");
}

ScalarField ScalarField::zeros(const Grid3& grid) {
  return ScalarField(grid, std::vector<double>(grid.physical_size(), 0.0));
}

VectorField::VectorField(Grid3 grid, Representation rep) : grid_(std::move(grid)), rep_(rep) {}

VectorField VectorField::zeros(const Grid3& grid, Representation rep) {
  VectorField f(grid, rep);
  for (int c = 0; c < 3; ++c) {
    if (rep == Representation::physical)
      f.phys_[c].assign(grid.physical_size(), 0.0);
    else
      f.spec_[c].assign(grid.spectral_size(), Complex{});
  }
  f.solenoidal_ = true;
  return f;
}

VectorField VectorField::from_physical(const Grid3& grid, PhysicalData data) {
  for (const auto& c : data)
    require(c.size() == grid.physical_size(), "vector field size does not match grid");
  VectorField f(grid, Representation::physical);
  f.phys_ = std::move(data);
  return f;
}

VectorField VectorField::from_spectral(const Grid3& grid, SpectralData data, bool solenoidal) {
  for (const auto& c : data)
    require(c.size() == grid.spectral_size(), "vector field size does not match grid");
  VectorField f(grid, Representation::spectral);
  f.spec_ = std::move(data);
  f.solenoidal_ = solenoidal;
  return f;
}

std::span<const double> VectorField::physical(int c) const {
  require(is_physical(), "field is not in physical representation");
  return phys_.at(c);
}

std::span<double> VectorField::physical(int c) {
  require(is_physical(), "field is not in physical representation");
  return phys_.at(c);
}

std::span<const Complex> VectorField::spectral(int c) const {
  require(is_spectral(), "field is not in spectral representation");
  return spec_.at(c);
}

std::span<Complex> VectorField::spectral(int c) {
  require(is_spectral(), "field is not in spectral representation");
  return spec_.at(c);
}

const VectorField::SpectralData& VectorField::spectral_data() const {
  require(is_spectral(), "field is not in spectral representation");
  return spec_;
}

VectorField::SpectralData& VectorField::spectral_data() {
  require(is_spectral(), "field is not in spectral representation");
  return spec_;
}

VectorField VectorField::to_spectral() const {
  return is_spectral() ? *this : transform(*this, Direction::forward);
}

VectorField VectorField::to_physical() const {
  return is_physical() ? *this : transform(*this, Direction::inverse);
}

VectorField& VectorField::operator+=(const VectorField& other) {
  require(grid_ == other.grid_, "grid mismatch");
  const VectorField& rhs =
      other.rep_ == rep_ ? other : (is_spectral() ? other.to_spectral() : other.to_physical());
  for (int c = 0; c < 3; ++c) {
    if (is_physical())
      for (std::size_t i = 0; i < phys_[c].size(); ++i) phys_[c][i] += rhs.phys_[c][i];
    else
      for (std::size_t i = 0; i < spec_[c].size(); ++i) spec_[c][i] += rhs.spec_[c][i];
  }
  solenoidal_ = solenoidal_ && other.solenoidal_;
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& other) {
  require(grid_ == other.grid_, "grid mismatch");
  const VectorField& rhs =
      other.rep_ == rep_ ? other : (is_spectral() ? other.to_spectral() : other.to_physical());
  for (int c = 0; c < 3; ++c) {
    if (is_physical())
      for (std::size_t i = 0; i < phys_[c].size(); ++i) phys_[c][i] -= rhs.phys_[c][i];
    else
      for (std::size_t i = 0; i < spec_[c].size(); ++i) spec_[c][i] -= rhs.spec_[c][i];
  }
  solenoidal_ = solenoidal_ && other.solenoidal_;
  return *this;
}

VectorField& VectorField::operator*=(double factor) {
  for (int c = 0; c < 3; ++c) {
    for (auto& v : phys_[c]) v *= factor;
    for (auto& v : spec_[c]) v *= factor;
  }
  return *this;
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double factor, VectorField a) { return a *= factor; }

VectorField transform(const VectorField& field, Direction direction) {
  const Grid3& grid = field.grid();
  const FftEngine& fft = FftEngine::for_size(grid.n());
  if (direction == Direction::forward) {
    require(field.is_physical(), "forward transform needs a physical field");
    VectorField::SpectralData out;
    for (int c = 0; c < 3; ++c) {
      for (double v : field.physical(c))
        if (!std::isfinite(v)) throw InvalidArgument("non-finite value in field");
      out[c].resize(grid.spectral_size());
      fft.forward(field.physical(c), out[c]);
    }
    return VectorField::from_spectral(grid, std::move(out), field.solenoidal());
  }
  require(field.is_spectral(), "inverse transform needs a spectral field");
  VectorField::PhysicalData out;
  for (int c = 0; c < 3; ++c) {
    for (const Complex& v : field.spectral(c))
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw InvalidArgument("non-finite value in field");
    out[c].resize(grid.physical_size());
    fft.inverse(field.spectral(c), out[c]);
  }
  VectorField result = VectorField::from_physical(grid, std::move(out));
  result.mark_solenoidal(field.solenoidal());
  return result;
}

VectorField multiply(const VectorField& field, const ScalarField& weight) {
  require(field.grid() == weight.grid(), "grid mismatch");
  VectorField out = field.to_physical();
  const auto w = weight.values();
  for (int c = 0; c < 3; ++c) {
    auto v = out.physical(c);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] *= w[i];
  }
  out.mark_solenoidal(false);
  return out;
}

TensorField::TensorField(Grid3 grid, SpectralData data)
    : grid_(std::move(grid)), data_(std::move(data)) {
  for (const auto& c : data_)
    require(c.size() == grid_.spectral_size(), "tensor field size does not match grid");
}

TensorField tensor_product(const VectorField& f, const VectorField& g, bool symmetric) {
  require(f.grid() == g.grid(), "grid mismatch");
  const Grid3& grid = f.grid();
  const FftEngine& fft = FftEngine::for_size(grid.n());
  const VectorField fp = f.to_physical();
  const VectorField gp = g.to_physical();
  TensorField::SpectralData data;
  std::vector<double> product(grid.physical_size());
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      auto& slot = data[3 * i + j];
      if (symmetric && j < i) {
        slot = data[3 * j + i];
        continue;
      }
      const auto fi = fp.physical(i), gj = gp.physical(j);
      if (symmetric) {
        const auto fj = fp.physical(j), gi = gp.physical(i);
        for (std::size_t x = 0; x < product.size(); ++x)
          product[x] = 0.5 * (fi[x] * gj[x] + fj[x] * gi[x]);
      } else {
        for (std::size_t x = 0; x < product.size(); ++x) product[x] = fi[x] * gj[x];
      }
      slot.resize(grid.spectral_size());
      fft.forward(product, slot);
      dealias_in_place(grid, slot);
    }
  }
  return TensorField(grid, std::move(data));
}

}  // namespace nslab::spectral
