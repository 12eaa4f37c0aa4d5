#pragma once

/// @file navier_stokes.hpp
/// Incompressible Navier-Stokes (unit viscosity, no forcing) and heat flow on
/// the periodic box.

#include <span>

#include "nslab/evolution/trajectory.hpp"

namespace nslab::evolution {

struct NsOptions {
  double dt = 1e-4;
  /// Advective bound dt * (max|u1| + max|u2| + max|u3|) / h <= cfl.
  double cfl = 0.4;
  /// Abort once the energy exceeds this multiple of its initial value.
  double blowup_factor = 10.0;
};

/// Integrating-factor RK4 with exact heat factors. Snapshots are emitted at
/// each schedule time (nonnegative, strictly increasing); the last step
/// before a schedule time is shortened to land on it.
Trajectory evolve_ns(const VectorField& u0, std::span<const double> schedule,
                     const NsOptions& options);

/// exp(t Delta) u0 at each requested time.
Trajectory evolve_heat(const VectorField& u0, std::span<const double> times);

/// -P div(u (x) u), dealiased; spectral and solenoidal.
VectorField nonlinear_term(const VectorField& u);

/// ||u||_2^2 by Parseval.
double energy(const VectorField& u);
/// ||grad u||_2^2 by Parseval with derivative wavenumbers.
double enstrophy(const VectorField& u);

}  // namespace nslab::evolution
