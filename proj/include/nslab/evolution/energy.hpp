#pragma once

/// @file energy.hpp
/// Local energy and perturbed energy inequalities evaluated on trajectories.

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "nslab/evolution/trajectory.hpp"

namespace nslab::evolution {

using Point = std::array<double, 3>;

/// Nonnegative test function phi(x, t) with its derivatives. Positions are
/// grid coordinates in [0, L)^3.
struct TestFunction {
  std::function<double(const Point&, double)> value;
  std::function<double(const Point&, double)> time_derivative;
  std::function<Point(const Point&, double)> gradient;
  std::function<double(const Point&, double)> laplacian;
};

/// phi = eta(t) psi(x) with the periodic bump
///   psi(x) = prod_i ((1 + cos(2 pi (x_i - c_i) / L)) / 2)^m,
/// a trigonometric polynomial of degree m per axis peaked at `center`
/// (psi = 1 when m = 0). eta rises smoothly from 0 at t_on to 1 at
/// t_on + ramp. Being band-limited, psi keeps the grid quadrature of the
/// energy terms free of aliasing for dealiased fields when m <= n/6.
TestFunction bump_test_function(const Grid3& grid, Point center, int m, double t_on, double ramp);

/// Cumulative integral of sampled values from times[0] to each node: Simpson
/// panels and a 4-point start for odd node counts; exact for quadratics, and
/// for cubics on uniform nodes.
std::vector<double> running_integral(std::span<const double> times, std::span<const double> values);

/// LHS - RHS of the local energy inequality at snapshot time t:
///   int phi |u|^2 (t) + 2 int int |grad u|^2 phi
///   - int int |u|^2 (d_t phi + Delta phi) - int int (|u|^2 + 2p) u . grad phi.
/// phi must vanish at the first snapshot time.
double local_energy_residual(const Trajectory& traj, const TestFunction& phi, double t);

/// Residuals of every test function at every end time, sharing one pass over
/// the snapshots. Result is indexed [function][end time].
std::vector<std::vector<double>> local_energy_residuals(const Trajectory& traj,
                                                        std::span<const TestFunction> phis,
                                                        std::span<const double> t_ends);

struct EnergyLedger {
  static constexpr double epsilon1 = 3.0 / 7.0;
  static constexpr double epsilon2 = 3.0 / 4.0;
  double c_l = 0.0;
  std::vector<double> times;
  std::vector<double> energy;       ///< ||w(t)||_2^2
  std::vector<double> dissipation;  ///< int_0^t ||grad w||_2^2
  std::vector<double> v4;           ///< ||V(t)||_4^4
  std::vector<double> mu;           ///< mu(0, t)
};

struct PerturbedEnergyCheck {
  EnergyLedger ledger;
  std::vector<double> lhs;  ///< ||w||^2 + 1/2 int ||grad w||^2
  std::vector<double> rhs;  ///< mu (||w_0||^2 + int ||V||_4^4 / epsilon2)
};

/// w = u - V with mu(0, t) = exp(C_L^8 / 4 * int epsilon1^-7 ||V||_4^8).
PerturbedEnergyCheck perturbed_energy_check(const Trajectory& u, const Trajectory& v, double c_l);

/// Largest ||f||_4 / (||f||_2^{1/4} ||grad f||_2^{3/4}) over random
/// mean-free band-limited fields and centered Gaussians.
double calibrate_ladyzhenskaya(const Grid3& grid, int samples, std::uint64_t seed);

}  // namespace nslab::evolution
