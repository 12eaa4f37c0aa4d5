/// @file test_evolution.cpp
/// Navier-Stokes stepping, Duhamel quadrature, Picard iterates and the
/// energy diagnostics.

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <numbers>

#include "nslab/analysis/fitting.hpp"
#include "nslab/analysis/norms.hpp"
#include "nslab/errors.hpp"
#include "nslab/evolution/duhamel.hpp"
#include "nslab/evolution/energy.hpp"
#include "nslab/evolution/navier_stokes.hpp"
#include "nslab/evolution/oseen_kernel.hpp"
#include "nslab/evolution/pressure.hpp"
#include "nslab/random.hpp"
#include "nslab/spectral/operators.hpp"

using namespace nslab;
using namespace nslab::evolution;
using nslab::spectral::make_grid;

namespace {

constexpr double kPi = std::numbers::pi;

/// Solenoidal datum made of random Fourier modes with |m_i| <= max_mode.
VectorField random_datum(const Grid3& g, int max_mode, std::uint64_t seed, double amplitude = 1.0) {
  const CounterRng rng(seed, 1);
  const double w = 2.0 * kPi / g.length();
  struct Mode {
    int m[3];
    double a[3], b[3];
  };
  std::vector<Mode> modes;
  std::uint64_t c = 0;
  for (int i = 0; i < 12; ++i) {
    Mode mode;
    for (int d = 0; d < 3; ++d) {
      mode.m[d] = static_cast<int>(std::floor(rng.uniform(c++) * (2 * max_mode + 1))) - max_mode;
      mode.a[d] = rng.normal(c++);
      mode.b[d] = rng.normal(c++);
    }
    modes.push_back(mode);
  }
  VectorField f = VectorField::sample(g, [&](double x, double y, double z) {
    std::array<double, 3> v{};
    for (const auto& m : modes) {
      const double ph = w * (m.m[0] * x + m.m[1] * y + m.m[2] * z);
      for (int d = 0; d < 3; ++d) v[d] += m.a[d] * std::cos(ph) + m.b[d] * std::sin(ph);
    }
    return v;
  });
  VectorField p = spectral::dealias(spectral::leray_project(f));
  for (int d = 0; d < 3; ++d) p.spectral(d)[0] = Complex{};
  p *= amplitude / std::sqrt(energy(p) / g.volume());
  p.mark_solenoidal(true);
  return p;
}

std::vector<double> uniform_times(double t_end, int intervals) {
  std::vector<double> t;
  for (int i = 0; i <= intervals; ++i) t.push_back(t_end * i / intervals);
  return t;
}

double l2_diff(const VectorField& a, const VectorField& b) { return std::sqrt(energy(a - b)); }

double max_diff(const VectorField& a, const VectorField& b) {
  return spectral::max_magnitude(a - b);
}

VectorField shear_mode(const Grid3& g, double amplitude) {
  VectorField f = VectorField::sample(g, [&](double x, double, double) {
    return std::array<double, 3>{0.0, amplitude * std::sin(2.0 * kPi * x / g.length()), 0.0};
  }).to_spectral();
  f.mark_solenoidal(true);
  return f;
}

}  // namespace

// ============================================================================
// Trajectories
// ============================================================================

TEST(Trajectory, EnforcesOrderingAndSolenoidalFlows) {
  const Grid3 g = make_grid(8, 1.0);
  Trajectory t(FlowTag::ns());
  t.append(0.0, VectorField::zeros(g));
  EXPECT_THROW(t.append(0.0, VectorField::zeros(g)), InvalidArgument);
  VectorField raw = VectorField::sample(g, [](double x, double, double) {
    return std::array<double, 3>{x, 0.0, 0.0};
  });
  EXPECT_THROW(t.append(1.0, raw), InvalidArgument);
  EXPECT_THROW(t.append(1.0, VectorField::zeros(make_grid(10, 1.0))), InvalidArgument);
  EXPECT_EQ(FlowTag::picard(2).label(), "picard_2");
}

TEST(Trajectory, BinaryRoundTrip) {
  const Grid3 g = make_grid(16, 2.0 * kPi);
  const auto times = uniform_times(0.01, 3);
  const Trajectory heat = evolve_heat(random_datum(g, 3, 5), times);
  const auto path = std::filesystem::temp_directory_path() / "nslab_roundtrip.bin";
  write_trajectory(path, heat);
  const Trajectory back = read_trajectory(path);
  std::filesystem::remove(path);
  ASSERT_EQ(back.size(), heat.size());
  EXPECT_EQ(back.tag(), heat.tag());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back.time(i), heat.time(i));
    EXPECT_LE(max_diff(back.at(i), heat.at(i)), 1e-14);
  }
  EXPECT_THROW(read_trajectory("/nonexistent/file.bin"), InvalidArgument);
}

// ============================================================================
// Navier-Stokes solver
// ============================================================================

TEST(EvolveNs, ZeroDatumStaysZero) {
  const Grid3 g = make_grid(16, 2.0 * kPi);
  const auto times = uniform_times(0.01, 4);
  const Trajectory t = evolve_ns(VectorField::zeros(g, spectral::Representation::spectral), times,
                                 {.dt = 1e-3});
  for (const auto& s : t.snapshots()) EXPECT_EQ(spectral::max_coefficient(s), 0.0);
}

TEST(EvolveNs, ShearModeFollowsHeatFlow) {
  const Grid3 g = make_grid(16, 2.0 * kPi);
  const VectorField u0 = shear_mode(g, 2.0);
  const std::vector<double> times{0.0, 0.01, 0.05, 0.1};
  const Trajectory ns = evolve_ns(u0, times, {.dt = 1e-3});
  const Trajectory heat = evolve_heat(u0, times);
  for (std::size_t i = 0; i < times.size(); ++i) EXPECT_LE(max_diff(ns.at(i), heat.at(i)), 1e-10);
}

TEST(EvolveNs, SnapshotsSolenoidalDealiasedAndEnergyBalanced) {
  const Grid3 g = make_grid(32, 2.0 * kPi);
  const VectorField u0 = random_datum(g, 3, 11, 2.0);
  const auto times = uniform_times(0.02, 200);
  const Trajectory ns = evolve_ns(u0, times, {.dt = 1e-4});
  const double e0 = energy(u0);
  double dissipation = 0.0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const VectorField& s = ns.at(i);
    ASSERT_TRUE(s.solenoidal());
    EXPECT_LE(spectral::max_divergence(s), 1e-10 * spectral::max_coefficient(s));
    EXPECT_LE(max_diff(spectral::dealias(s), s), 0.0);
    if (i > 0) dissipation += 0.5 * (ns.time(i) - ns.time(i - 1)) * (enstrophy(ns.at(i - 1)) + enstrophy(s));
    EXPECT_NEAR(energy(s) + 2.0 * dissipation, e0, 1e-5 * e0) << ns.time(i);
  }
}

TEST(EvolveNs, RejectsBadInput) {
  const Grid3 g = make_grid(16, 2.0 * kPi);
  const VectorField u0 = random_datum(g, 2, 3, 50.0);
  const std::vector<double> times{0.0, 0.01};
  EXPECT_THROW(evolve_ns(u0, times, {.dt = 1e-2}), SolverError);
  EXPECT_THROW(evolve_ns(u0, times, {.dt = 1e-5, .cfl = 0.4, .blowup_factor = 0.5}), SolverError);
  VectorField with_mean = u0;
  with_mean.spectral(0)[0] = 1.0;
  EXPECT_THROW(evolve_ns(with_mean, times, {.dt = 1e-4}), InvalidArgument);
  EXPECT_THROW(evolve_ns(u0, std::vector<double>{0.01, 0.0}, {.dt = 1e-4}), InvalidArgument);
  VectorField rough = VectorField::sample(g, [](double x, double, double) {
    return std::array<double, 3>{0.0, std::sin(7 * x), 0.0};
  });
  EXPECT_THROW(evolve_ns(rough, times, {.dt = 1e-4}), InvalidArgument);
}

TEST(EvolveNs, RescalingEquivariance) {
  const Grid3 g = make_grid(32, 2.0 * kPi);
  const Grid3 small = make_grid(32, kPi);
  const double lambda = 2.0;
  const VectorField u0 = random_datum(g, 3, 21, 1.5);
  // u0^lambda(x) = lambda u0(lambda x): identical nodal values on the half box
  VectorField scaled = VectorField::from_spectral(small, (lambda * u0).spectral_data(), true);
  const std::vector<double> times{0.0, 0.01, 0.02};
  std::vector<double> scaled_times;
  for (double t : times) scaled_times.push_back(t / (lambda * lambda));
  const Trajectory a = evolve_ns(u0, times, {.dt = 1e-3});
  const Trajectory b = evolve_ns(scaled, scaled_times, {.dt = 1e-3 / (lambda * lambda)});
  for (std::size_t i = 0; i < times.size(); ++i) {
    const VectorField lhs = b.at(i).to_physical();
    const VectorField rhs = lambda * a.at(i).to_physical();
    double diff = 0.0, scale = 0.0;
    for (int c = 0; c < 3; ++c)
      for (std::size_t k = 0; k < lhs.physical(c).size(); ++k) {
        diff = std::max(diff, std::abs(lhs.physical(c)[k] - rhs.physical(c)[k]));
        scale = std::max(scale, std::abs(rhs.physical(c)[k]));
      }
    EXPECT_LE(diff, 1e-6 * scale);
  }
}

TEST(EvolveNs, MatchesSecondPicardIterateToThirdOrder) {
  const Grid3 g = make_grid(16, 2.0 * kPi);
  const VectorField base = random_datum(g, 2, 7);
  const auto times = uniform_times(0.1, 32);
  analysis::Series gap;
  for (double eps : {0.1, 0.2, 0.4, 0.8}) {
    const auto picard = picard_iterates(eps * base, 2, times);
    const Trajectory ns = evolve_ns(eps * base, times, {.dt = 1e-3});
    gap.push_back({eps, l2_diff(ns.back(), picard[2].back())});
  }
  EXPECT_GE(analysis::rate_fit(gap, {0.1, 0.8}).slope, 2.7);
}

// ============================================================================
// Duhamel operator and Picard iterates
// ============================================================================

TEST(Duhamel, InterpolatoryWeightsReproduceClassicRules) {
  const std::vector<double> s{0.0, 0.5, 1.0};
  const auto w = interpolatory_weights(s);
  EXPECT_NEAR(w[0], 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(w[1], 4.0 / 6.0, 1e-15);
  const std::vector<double> e{0.0, 1.0, 2.0, 3.0};
  const auto w38 = interpolatory_weights(e);
  EXPECT_NEAR(w38[0], 3.0 / 8.0, 1e-14);
  EXPECT_NEAR(w38[1], 9.0 / 8.0, 1e-14);
}

TEST(Duhamel, ZeroArgumentAndSymmetry) {
  const Grid3 g = make_grid(16, 2.0 * kPi);
  const auto times = uniform_times(0.02, 8);
  const Trajectory f = evolve_heat(random_datum(g, 3, 1), times);
  const Trajectory h = evolve_heat(random_datum(g, 3, 2), times);
  const Trajectory zero = evolve_heat(VectorField::zeros(g), times);
  EXPECT_EQ(spectral::max_coefficient(duhamel_B(zero, h, 0.02, false)), 0.0);
  const VectorField ab = duhamel_B(f, h, 0.02, true);
  const VectorField ba = duhamel_B(h, f, 0.02, true);
  EXPECT_LE(spectral::max_coefficient(ab - ba), 1e-16);
  EXPECT_TRUE(ab.solenoidal());
  EXPECT_LE(spectral::max_divergence(ab), 1e-10 * spectral::max_coefficient(ab));
  EXPECT_THROW(duhamel_B(f, h, 0.01, true), InvalidArgument);
  EXPECT_THROW(duhamel_B(f, h, 0.03, true), InvalidArgument);
}

TEST(Duhamel, ConstantModePairClosedForm) {
  // u = (0, sin(x + z), 0), v = (cos z, 0, 0), both constant in time.
  // (u (x) v)_21 = (sin(x + 2z) + sin x) / 2 carries wavevectors (1, 0, 2)
  // and (1, 0, 0), both orthogonal to the second axis, so P acts trivially.
  const Grid3 g = make_grid(16, 2.0 * kPi);
  const VectorField u = VectorField::sample(g, [](double x, double, double z) {
    return std::array<double, 3>{0.0, std::sin(x + z), 0.0};
  });
  const VectorField v = VectorField::sample(g, [](double, double, double z) {
    return std::array<double, 3>{std::cos(z), 0.0, 0.0};
  });
  const double t = 0.3;
  const auto times = uniform_times(t, 16);
  Trajectory fu, fv;
  for (double s : times) {
    fu.append(s, u);
    fv.append(s, v);
  }
  const VectorField b = duhamel_B(fu, fv, t, false).to_spectral();
  const VectorField expected = VectorField::sample(g, [&](double x, double, double z) {
    const double f5 = (1.0 - std::exp(-5.0 * t)) / 5.0;
    const double f1 = (1.0 - std::exp(-1.0 * t)) / 1.0;
    return std::array<double, 3>{0.0, -0.5 * (f5 * std::cos(x + 2 * z) + f1 * std::cos(x)), 0.0};
  });
  EXPECT_LE(max_diff(b, expected), 1e-6);
}

TEST(Duhamel, QuadratureConvergesAtFourthOrder) {
  const Grid3 g = make_grid(16, 2.0 * kPi);
  const VectorField u0 = random_datum(g, 2, 9, 3.0);
  const double t = 0.2;
  std::vector<double> errors;
  const VectorField reference = [&] {
    const auto times = uniform_times(t, 512);
    const Trajectory p = evolve_heat(u0, times);
    return duhamel_B(p, p, t, true);
  }();
  for (int m : {8, 16, 32}) {
    const auto times = uniform_times(t, m);
    const Trajectory p = evolve_heat(u0, times);
    errors.push_back(l2_diff(duhamel_B(p, p, t, true), reference));
  }
  EXPECT_GE(std::log2(errors[0] / errors[1]), 3.5);
  EXPECT_GE(std::log2(errors[1] / errors[2]), 3.5);
}

TEST(Picard, ZeroDatumAndRecursion) {
  const Grid3 g = make_grid(16, 2.0 * kPi);
  const auto times = uniform_times(0.05, 10);
  const auto zero = picard_iterates(VectorField::zeros(g), 3, times);
  ASSERT_EQ(zero.size(), 4u);
  for (const auto& p : zero)
    for (const auto& s : p.snapshots()) EXPECT_EQ(spectral::max_coefficient(s), 0.0);

  const auto picard = picard_iterates(random_datum(g, 3, 4), 1, times);
  const VectorField direct = duhamel_B(picard[0], picard[0], 0.05, true);
  EXPECT_LE(spectral::max_coefficient((picard[1].back() - picard[0].back()) - direct), 1e-16);
}

TEST(Picard, SecondCorrectionIsCubicInAmplitude) {
  const Grid3 g = make_grid(16, 2.0 * kPi);
  const VectorField base = random_datum(g, 2, 8);
  const auto times = uniform_times(0.1, 16);
  analysis::Series gap;
  for (double eps : {0.1, 0.3, 1.0}) {
    const auto p = picard_iterates(eps * base, 2, times);
    gap.push_back({eps, l2_diff(p[2].back(), p[1].back())});
  }
  EXPECT_GE(analysis::rate_fit(gap, {0.1, 1.0}).slope, 2.7);
}

TEST(Picard, BitIdenticalAcrossRuns) {
  const Grid3 g = make_grid(16, 2.0 * kPi);
  const auto times = uniform_times(0.05, 10);
  const auto a = picard_iterates(random_datum(g, 3, 4), 2, times);
  const auto b = picard_iterates(random_datum(g, 3, 4), 2, times);
  for (int c = 0; c < 3; ++c) {
    const auto x = a[2].back().spectral(c), y = b[2].back().spectral(c);
    EXPECT_TRUE(std::equal(x.begin(), x.end(), y.begin()));
  }
}

// ============================================================================
// Expansion terms
// ============================================================================

TEST(Expansion, DegenerateCutoffs) {
  const Grid3 g = make_grid(16, 2.0 * kPi);
  const VectorField u0 = random_datum(g, 3, 6);
  const auto times = uniform_times(0.04, 8);
  const auto none = expansion_terms(u0, ScalarField::zeros(g), times);
  for (const auto& s : none.p2_tilde.snapshots()) EXPECT_EQ(spectral::max_coefficient(s), 0.0);
  EXPECT_LE(spectral::max_coefficient(none.p_omega.back() - none.p1.back()), 0.0);

  const ScalarField one(g, std::vector<double>(g.physical_size(), 1.0));
  const auto all = expansion_terms(u0, one, times);
  const auto p0 = picard_iterates(u0, 0, times)[0];
  const Trajectory b00 = duhamel_series(p0, p0, true);
  const VectorField global = 2.0 * duhamel_B(p0, b00, 0.04, true);
  EXPECT_LE(spectral::max_coefficient(all.p2_tilde.back() - global), 1e-15);
}

TEST(Expansion, MatchesTwoTermDefinition) {
  const Grid3 g = make_grid(16, 2.0 * kPi);
  const VectorField u0 = random_datum(g, 3, 12);
  const auto times = uniform_times(0.04, 8);
  const ScalarField chi = radial_cutoff(g, {kPi, kPi, kPi}, 1.0, 2.0);
  const auto terms = expansion_terms(u0, chi, times);
  const Trajectory p0 = picard_iterates(u0, 0, times)[0];
  const Trajectory b00 = duhamel_series(p0, p0, true);
  const VectorField first = duhamel_B(p0, multiply(b00, chi), 0.04, false);
  const VectorField second = duhamel_B(b00, multiply(p0, chi), 0.04, false);
  const VectorField sum = first + second;
  EXPECT_LE(spectral::max_coefficient(terms.p2_tilde.back() - sum),
            1e-13 * spectral::max_coefficient(sum));
}

TEST(Expansion, LocalizedCorrectionIsCubicInAmplitude) {
  const Grid3 g = make_grid(16, 2.0 * kPi);
  const VectorField base = random_datum(g, 2, 13);
  const auto times = uniform_times(0.05, 8);
  const ScalarField chi = radial_cutoff(g, {kPi, kPi, kPi}, 1.0, 2.0);
  analysis::Series size;
  for (double eps : {0.1, 0.3, 1.0}) {
    const auto terms = expansion_terms(eps * base, chi, times);
    size.push_back({eps, std::sqrt(energy(terms.p2_tilde.back()))});
  }
  EXPECT_GE(analysis::rate_fit(size, {0.1, 1.0}).slope, 2.7);
}

TEST(Expansion, RejectsBadCutoffs) {
  const Grid3 g = make_grid(16, 2.0 * kPi);
  const VectorField u0 = random_datum(g, 2, 14);
  const auto times = uniform_times(0.02, 8);
  const ScalarField chi = radial_cutoff(g, {kPi, kPi, kPi}, 1.0, 2.0);
  const CutoffGeometry good{{kPi, kPi, kPi}, 0.8, 2.5};
  EXPECT_NO_THROW(expansion_terms(u0, chi, times, good));
  EXPECT_THROW(expansion_terms(u0, chi, times, CutoffGeometry{{kPi, kPi, kPi}, 0.8, 1.5}),
               InvalidArgument);
  EXPECT_THROW(expansion_terms(u0, chi, times, CutoffGeometry{{kPi, kPi, kPi}, 2.2, 2.5}),
               InvalidArgument);
  ScalarField bad = chi;
  bad.values()[0] = 1.5;
  EXPECT_THROW(expansion_terms(u0, bad, times), InvalidArgument);
}

// ============================================================================
// Pressure
// ============================================================================

TEST(Pressure, ShearAndTaylorGreen) {
  const Grid3 g = make_grid(16, 2.0 * kPi);
  EXPECT_EQ(analysis::lp_norm(pressure_field(VectorField::zeros(g)), INFINITY), 0.0);
  EXPECT_LE(analysis::lp_norm(pressure_field(shear_mode(g, 3.0)), INFINITY), 1e-14);
  const VectorField tg = VectorField::sample(g, [](double x, double y, double) {
    return std::array<double, 3>{std::sin(x) * std::cos(y), -std::cos(x) * std::sin(y), 0.0};
  });
  const ScalarField p = pressure_field(tg);
  const ScalarField expected = ScalarField::sample(
      g, [](double x, double y, double) { return 0.25 * (std::cos(2 * x) + std::cos(2 * y)); });
  double worst = 0.0;
  for (std::size_t i = 0; i < p.values().size(); ++i)
    worst = std::max(worst, std::abs(p.values()[i] - expected.values()[i]));
  EXPECT_LE(worst, 1e-14);
}

TEST(Pressure, MomentumResidualAlongSolution) {
  const Grid3 g = make_grid(32, 2.0 * kPi);
  const VectorField u0 = random_datum(g, 2, 31, 1.0);
  const double dt = 1e-3;
  const std::vector<double> times{0.05 - 2 * dt, 0.05 - dt, 0.05, 0.05 + dt, 0.05 + 2 * dt};
  const Trajectory ns = evolve_ns(u0, times, {.dt = dt / 4});
  const VectorField u = ns.at(2).to_physical();
  // fourth-order central difference
  const VectorField dudt =
      (1.0 / (12 * dt)) * (8.0 * (ns.at(3) - ns.at(1)) - (ns.at(4) - ns.at(0))).to_physical();
  const VectorField lap = (-1.0 * spectral::fractional_laplacian(u, 2.0)).to_physical();
  const auto grad = spectral::velocity_gradient(u);
  const VectorField grad_p = spectral::gradient(pressure_field(u)).to_physical();
  double residual = 0.0, scale = 0.0;
  for (std::size_t x = 0; x < g.physical_size(); ++x)
    for (int i = 0; i < 3; ++i) {
      double adv = 0.0;
      for (int j = 0; j < 3; ++j) adv += u.physical(j)[x] * grad[3 * i + j][x];
      const double r = dudt.physical(i)[x] - lap.physical(i)[x] + adv + grad_p.physical(i)[x];
      residual = std::max(residual, std::abs(r));
      scale = std::max(scale, std::abs(lap.physical(i)[x]));
    }
  EXPECT_LE(residual, 1e-6 * scale);
}

// ============================================================================
// Energy inequalities
// ============================================================================

TEST(LocalEnergy, RunningIntegralIsExactForQuadratics) {
  const std::vector<double> t{0.0, 0.1, 0.25, 0.3, 0.5, 0.55, 0.8, 1.0};
  std::vector<double> f;
  for (double x : t) f.push_back(1.0 - 2.0 * x + 3.0 * x * x);
  const auto r = running_integral(t, f);
  for (std::size_t k = 0; k < t.size(); ++k) {
    const double x = t[k];
    const double exact = k == 1 ? 0.5 * x * (f[0] + f[1]) : x - x * x + x * x * x;
    EXPECT_NEAR(r[k], exact, 1e-14) << k;
  }
  // cubics on uniform nodes
  const std::vector<double> u{0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<double> c;
  for (double x : u) c.push_back(x * x * x);
  const auto rc = running_integral(u, c);
  EXPECT_NEAR(rc[3], 0.25 * std::pow(0.75, 4), 1e-15);
  EXPECT_NEAR(rc[4], 0.25, 1e-15);
  EXPECT_THROW(running_integral(t, std::vector<double>(3)), InvalidArgument);
}

TEST(LocalEnergy, BatchedResidualsMatchSingleCalls) {
  const Grid3 g = make_grid(16, 2.0 * kPi);
  const auto times = uniform_times(0.04, 20);
  const Trajectory ns = evolve_ns(random_datum(g, 2, 31, 1.0), times, {.dt = 1e-3});
  const std::vector<TestFunction> phis{bump_test_function(g, {1.0, 2.0, 3.0}, 2, 0.004, 0.02),
                                       bump_test_function(g, {kPi, kPi, kPi}, 1, 0.004, 0.02)};
  const std::vector<double> ends{0.02, 0.04};
  const auto all = local_energy_residuals(ns, phis, ends);
  for (std::size_t f = 0; f < phis.size(); ++f)
    for (std::size_t k = 0; k < ends.size(); ++k)
      EXPECT_EQ(all[f][k], local_energy_residual(ns, phis[f], ends[k]));
}

TEST(LocalEnergy, ZeroTrajectoryAndValidation) {
  const Grid3 g = make_grid(16, 2.0 * kPi);
  const auto times = uniform_times(0.02, 8);
  const Trajectory zero = evolve_heat(VectorField::zeros(g), times);
  const TestFunction phi = bump_test_function(g, {kPi, kPi, kPi}, 2, 0.002, 0.01);
  EXPECT_EQ(local_energy_residual(zero, phi, 0.02), 0.0);
  const TestFunction early = bump_test_function(g, {kPi, kPi, kPi}, 2, -0.01, 0.005);
  EXPECT_THROW(local_energy_residual(zero, early, 0.02), InvalidArgument);
  TestFunction negative = phi;
  negative.value = [](const Point&, double t) { return t > 0.01 ? -1.0 : 0.0; };
  EXPECT_THROW(local_energy_residual(zero, negative, 0.02), InvalidArgument);
}

TEST(LocalEnergy, ConstantTestFunctionGivesGlobalBalance) {
  const Grid3 g = make_grid(16, 2.0 * kPi);
  const auto times = uniform_times(0.05, 50);
  const Trajectory ns = evolve_ns(random_datum(g, 2, 17, 2.0), times, {.dt = 1e-3});
  const TestFunction phi = bump_test_function(g, {0, 0, 0}, 0, 0.005, 0.02);
  // int eta |u|^2 (t) + 2 int eta ||grad u||^2 - int eta' ||u||^2
  std::vector<double> integrand;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const Point x{0, 0, 0};
    integrand.push_back(2.0 * phi.value(x, ns.time(i)) * enstrophy(ns.at(i)) -
                        phi.time_derivative(x, ns.time(i)) * energy(ns.at(i)));
  }
  const double integral = running_integral(ns.times(), integrand).back();
  const double expected = phi.value({0, 0, 0}, 0.05) * energy(ns.back()) + integral;
  EXPECT_NEAR(local_energy_residual(ns, phi, 0.05), expected, 1e-10 * energy(ns.at(0)));
}

TEST(LocalEnergy, SmoothSolutionSatisfiesEquality) {
  const Grid3 g = make_grid(32, 2.0 * kPi);
  const auto times = uniform_times(0.1, 100);
  const Trajectory ns = evolve_ns(random_datum(g, 2, 19, 2.0), times, {.dt = 5e-4});
  const double scale = energy(ns.at(0));
  for (const Point c : {Point{kPi, kPi, kPi}, Point{1.0, 2.0, 5.0}}) {
    const TestFunction phi = bump_test_function(g, c, 5, 0.01, 0.05);
    const double r = local_energy_residual(ns, phi, 0.1);
    EXPECT_LE(std::abs(r), 1e-5 * scale) << r;
  }
}

TEST(PerturbedEnergy, DegenerateCases) {
  const Grid3 g = make_grid(16, 2.0 * kPi);
  const auto times = uniform_times(0.05, 25);
  const VectorField u0 = random_datum(g, 2, 23, 2.0);
  const Trajectory ns = evolve_ns(u0, times, {.dt = 1e-3});
  const Trajectory zero = evolve_heat(VectorField::zeros(g), times);
  const auto a = perturbed_energy_check(ns, zero, 0.5);
  for (std::size_t i = 0; i < a.lhs.size(); ++i) {
    EXPECT_DOUBLE_EQ(a.ledger.mu[i], 1.0);
    EXPECT_LE(a.lhs[i], a.rhs[i]);
    EXPECT_NEAR(a.rhs[i], energy(u0), 1e-12 * energy(u0));
  }
  const Trajectory heat = evolve_heat(u0, times);
  const auto b = perturbed_energy_check(heat, heat, 0.5);
  for (std::size_t i = 0; i < b.lhs.size(); ++i) {
    EXPECT_EQ(b.lhs[i], 0.0);
    EXPECT_LE(b.lhs[i], b.rhs[i]);
    if (i > 0) {
      EXPECT_GE(b.ledger.mu[i], b.ledger.mu[i - 1]);
      EXPECT_GE(b.ledger.dissipation[i], b.ledger.dissipation[i - 1]);
    }
  }
  EXPECT_THROW(perturbed_energy_check(ns, evolve_heat(u0, uniform_times(0.05, 5)), 0.5),
               InvalidArgument);
  EXPECT_THROW(perturbed_energy_check(ns, heat, 0.0), InvalidArgument);
}

TEST(PerturbedEnergy, LadyzhenskayaCalibrationIsStable) {
  const Grid3 g = make_grid(16, 2.0 * kPi);
  const double c = calibrate_ladyzhenskaya(g, 40, 1);
  EXPECT_GT(c, 0.1);
  EXPECT_LT(c, 2.0);
  EXPECT_EQ(c, calibrate_ladyzhenskaya(g, 40, 1));
}

// ============================================================================
// Oseen kernel
// ============================================================================

TEST(OseenKernel, SelfSimilarAtOriginAndResolved) {
  const Grid3 coarse = make_grid(64, 32.0);
  const Grid3 fine = make_grid(128, 32.0);
  const std::vector<double> ts{0.5, 1.0, 2.0};
  const std::vector<std::array<double, 3>> pts{{0, 0, 0}, {2.0, 0, 0}, {1.5, 2.0, -1.0}};
  const auto a = oseen_kernel_check(coarse, ts, pts);
  const auto b = oseen_kernel_check(fine, ts, pts);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    EXPECT_NEAR(a[i].magnitude, b[i].magnitude, 0.01 * b[i].magnitude);
  const double expected = std::pow(4 * kPi, -1.5) * (2.0 / 3.0) * std::sqrt(3.0);
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const auto& origin = b[k * pts.size()];
    EXPECT_NEAR(origin.magnitude * std::pow(ts[k], 1.5), expected, 0.01 * expected);
  }
  const std::vector<std::array<double, 3>> far{{9.0, 0, 0}};
  EXPECT_THROW(oseen_kernel_check(fine, ts, far), InvalidArgument);
  const std::vector<double> late{20.0};
  EXPECT_THROW(oseen_kernel_check(fine, late, pts), InvalidArgument);
}
