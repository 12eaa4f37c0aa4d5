/// @file test_spectral.cpp
/// Transforms and Fourier multipliers on the periodic box.

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "nslab/errors.hpp"
#include "nslab/spectral/fields.hpp"
#include "nslab/spectral/operators.hpp"

using namespace nslab;
using namespace nslab::spectral;

namespace {

constexpr double kPi = std::numbers::pi;

VectorField smooth_field(const Grid3& g) {
  const double w = 2.0 * kPi / g.length();
  return VectorField::sample(g, [w](double x, double y, double z) {
    return std::array<double, 3>{std::sin(w * y) + 0.3 * std::cos(2 * w * z),
                                 std::cos(w * x) * std::sin(w * z) + 0.1,
                                 std::exp(std::sin(w * x)) * std::cos(w * y)};
  });
}

double max_abs_diff(const VectorField& a, const VectorField& b) {
  const VectorField pa = a.to_physical(), pb = b.to_physical();
  double d = 0.0;
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < pa.physical(c).size(); ++i)
      d = std::max(d, std::abs(pa.physical(c)[i] - pb.physical(c)[i]));
  return d;
}

}  // namespace

// ============================================================================
// Grid
// ============================================================================

TEST(Grid, RejectsOddOrSmallSizes) {
  EXPECT_THROW(make_grid(7, 1.0), InvalidArgument);
  EXPECT_THROW(make_grid(6, 1.0), InvalidArgument);
  EXPECT_THROW(make_grid(16, 0.0), InvalidArgument);
  EXPECT_THROW(make_grid(16, -1.0), InvalidArgument);
  EXPECT_NO_THROW(make_grid(8, 1.0));
}

TEST(Grid, WavenumbersAndMeasure) {
  const Grid3 g = make_grid(16, 4.0);
  EXPECT_DOUBLE_EQ(g.cell_measure(), std::pow(0.25, 3));
  EXPECT_EQ(g.mode(0), 0);
  EXPECT_EQ(g.mode(8), -8);
  EXPECT_EQ(g.mode(15), -1);
  EXPECT_DOUBLE_EQ(g.wavenumber(1), 2.0 * kPi / 4.0);
  EXPECT_EQ(g.derivative_wavenumber(8), 0.0);
  EXPECT_NE(g.wavenumber(8), 0.0);
}

// ============================================================================
// Transforms
// ============================================================================

TEST(Transform, CosineHasHalfCoefficients) {
  const Grid3 g = make_grid(16, 3.0);
  const VectorField f = VectorField::sample(g, [&](double x, double, double) {
    return std::array<double, 3>{std::cos(2.0 * kPi * x / g.length()), 0.0, 0.0};
  });
  const VectorField s = transform(f, Direction::forward);
  EXPECT_NEAR(s.spectral(0)[g.spectral_index(1, 0, 0)].real(), 0.5, 1e-14);
  EXPECT_NEAR(s.spectral(0)[g.spectral_index(15, 0, 0)].real(), 0.5, 1e-14);
  EXPECT_NEAR(std::abs(s.spectral(0)[g.spectral_index(2, 0, 0)]), 0.0, 1e-14);
}

TEST(Transform, RoundTripIsExact) {
  const Grid3 g = make_grid(32, 2.0 * kPi);
  const VectorField f = smooth_field(g);
  const VectorField back = transform(transform(f, Direction::forward), Direction::inverse);
  EXPECT_LE(max_abs_diff(f, back), 1e-13 * max_magnitude(f));
}

TEST(Transform, ParsevalHolds) {
  const Grid3 g = make_grid(16, 1.7);
  const VectorField f = smooth_field(g);
  double physical = 0.0;
  for (int c = 0; c < 3; ++c)
    for (double v : f.physical(c)) physical += v * v * g.cell_measure();
  const VectorField s = f.to_spectral();
  double spectral = 0.0;
  for (int c = 0; c < 3; ++c)
    for (int i1 = 0; i1 < g.n(); ++i1)
      for (int i2 = 0; i2 < g.n(); ++i2)
        for (int l = 0; l < g.half_modes(); ++l)
          spectral += g.half_weight(l) * std::norm(s.spectral(c)[g.spectral_index(i1, i2, l)]);
  EXPECT_NEAR(spectral * g.volume(), physical, 1e-12 * physical);
}

TEST(Transform, RejectsNonFiniteInput) {
  const Grid3 g = make_grid(8, 1.0);
  VectorField f = VectorField::zeros(g);
  f.physical(1)[5] = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(transform(f, Direction::forward), InvalidArgument);
  EXPECT_THROW(transform(VectorField::zeros(g), Direction::inverse), InvalidArgument);
}

// ============================================================================
// Leray projection
// ============================================================================

TEST(Leray, AnnihilatesGradients) {
  const Grid3 g = make_grid(32, 2.0 * kPi);
  const ScalarField phi = ScalarField::sample(g, [](double x, double y, double z) {
    return std::cos(x) * std::sin(2 * y) + std::sin(z - x);
  });
  const VectorField grad = gradient(phi);
  const VectorField p = leray_project(grad);
  EXPECT_LE(max_magnitude(p), 1e-12 * max_magnitude(grad));
}

TEST(Leray, IsIdempotentAndSolenoidal) {
  const Grid3 g = make_grid(16, 2.0);
  const VectorField p = leray_project(smooth_field(g));
  EXPECT_TRUE(p.solenoidal());
  EXPECT_LE(max_divergence(p), 1e-10 * max_coefficient(p));
  const VectorField pp = leray_project(p);
  EXPECT_LE(max_abs_diff(p, pp), 1e-12);
}

TEST(Leray, KeepsMean) {
  const Grid3 g = make_grid(8, 1.0);
  const VectorField c = VectorField::sample(g, [](double, double, double) {
    return std::array<double, 3>{1.0, -2.0, 0.5};
  });
  EXPECT_LE(max_abs_diff(leray_project(c), c), 1e-14);
}

// ============================================================================
// Heat semigroup and fractional powers
// ============================================================================

TEST(Heat, SingleModeDecaysExactly) {
  const Grid3 g = make_grid(16, 2.0 * kPi);
  const VectorField f = VectorField::sample(g, [](double x, double y, double) {
    return std::array<double, 3>{0.0, 0.0, std::sin(x + 2 * y)};
  });
  const VectorField h = heat_semigroup(f, 0.3).to_physical();
  const VectorField expected = std::exp(-5.0 * 0.3) * f;
  EXPECT_LE(max_abs_diff(h, expected), 1e-14);
}

TEST(Heat, SemigroupAndIdentity) {
  const Grid3 g = make_grid(16, 2.0);
  const VectorField f = smooth_field(g);
  EXPECT_LE(max_abs_diff(heat_semigroup(f, 0.0), f), 1e-14);
  const VectorField a = heat_semigroup(heat_semigroup(f, 0.01), 0.02);
  const VectorField b = heat_semigroup(f, 0.03);
  EXPECT_LE(max_abs_diff(a, b), 1e-14);
  EXPECT_THROW(heat_semigroup(f, -1e-3), InvalidArgument);
}

TEST(Fractional, OrderZeroIsIdentityAndOrderTwoIsMinusLaplacian) {
  const Grid3 g = make_grid(16, 2.0 * kPi);
  const VectorField f = VectorField::sample(g, [](double x, double y, double z) {
    return std::array<double, 3>{std::sin(x) * std::cos(z), 0.0, std::cos(2 * y)};
  });
  EXPECT_LE(max_abs_diff(fractional_laplacian(f, 0.0), f), 1e-14);
  const VectorField lap = VectorField::sample(g, [](double x, double y, double z) {
    return std::array<double, 3>{2.0 * std::sin(x) * std::cos(z), 0.0, 4.0 * std::cos(2 * y)};
  });
  EXPECT_LE(max_abs_diff(fractional_laplacian(f, 2.0), lap), 1e-12);
}

TEST(Fractional, NegativeOrderNeedsMeanFreeField) {
  const Grid3 g = make_grid(8, 1.0);
  EXPECT_THROW(fractional_laplacian(smooth_field(g), -0.5), InvalidArgument);
  EXPECT_NO_THROW(fractional_laplacian(leray_project(smooth_field(g)) -
                                           VectorField::sample(g, [](double, double, double) {
                                             return std::array<double, 3>{0.0, 0.1, 0.0};
                                           }),
                                       -0.5));
}

// ============================================================================
// Oseen propagator and dealiasing
// ============================================================================

TEST(Oseen, ConstantTensorGivesZero) {
  const Grid3 g = make_grid(8, 1.0);
  const VectorField a = VectorField::sample(g, [](double, double, double) {
    return std::array<double, 3>{1.0, 2.0, 3.0};
  });
  const VectorField out = oseen_propagate(tensor_product(a, a, true), 0.1);
  EXPECT_LE(max_coefficient(out), 1e-15);
}

TEST(Oseen, MatchesComposedOperators) {
  const Grid3 g = make_grid(16, 2.0 * kPi);
  const VectorField f = smooth_field(g);
  const TensorField t = tensor_product(f, leray_project(f), false);
  const VectorField direct = oseen_propagate(t, 0.05);
  const VectorField composed = heat_semigroup(leray_project(divergence(t)), 0.05);
  EXPECT_LE(max_abs_diff(direct, composed), 1e-13);
  EXPECT_LE(max_divergence(direct), 1e-10 * max_coefficient(direct));
}

TEST(Dealias, TwoThirdsCutoff) {
  const Grid3 g = make_grid(12, 2.0 * kPi);
  const auto mode_field = [&](int m) {
    return VectorField::sample(g, [m](double x, double, double) {
      return std::array<double, 3>{0.0, std::cos(m * x), 0.0};
    });
  };
  EXPECT_LE(max_abs_diff(dealias(mode_field(4)), mode_field(4)), 1e-14);
  EXPECT_LE(max_magnitude(dealias(mode_field(5))), 1e-14);
}

TEST(TensorProduct, SymmetricAveragesBothOrders) {
  const Grid3 g = make_grid(16, 2.0);
  const VectorField f = smooth_field(g);
  const VectorField h = heat_semigroup(f, 0.01);
  const TensorField s = tensor_product(f, h, true);
  const TensorField a = tensor_product(f, h, false);
  const TensorField b = tensor_product(h, f, false);
  double worst = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < g.spectral_size(); ++k)
        worst = std::max(worst, std::abs(s.component(i, j)[k] -
                                         0.5 * (a.component(i, j)[k] + b.component(i, j)[k])));
  EXPECT_LE(worst, 1e-15);
}
