#pragma once
/// @file datum.hpp
/// Initial data factories for the experiment harness.

#include <cstdint>
#include <string>

#include "nslab/spectral/fields.hpp"

namespace nslab::lab {

using spectral::Grid3;
using spectral::VectorField;

enum class DatumKind { homogeneous_mimic, localized_bounded, pair_agreeing_locally, single_mode, gaussian_bump };

std::string to_string(DatumKind kind);
DatumKind datum_kind_from_string(const std::string& name);

/// Parameters of an initial datum. Radii are in box units.
struct DatumSpec {
  DatumKind kind = DatumKind::homogeneous_mimic;
  double p = 3.0;                   ///< target weak-L^p index of the mimic profile
  double core_radius = 0.25;        ///< mollification radius of the singular core
  double envelope_radius = 1.5;     ///< the profile is switched off between R and 2R
  double agreement_radius = 0.5;    ///< pair kind: radius of the ball where u0 = v0
  double amplitude = 1.0;
  double perturbation_amplitude = 0.1;  ///< pair kind: size of the far-field difference
  std::uint64_t seed = 0;
};

/// Throws InvalidArgument unless eps_core >= 2L/n, R_env <= L/4 and amplitude > 0.
void validate(const DatumSpec& spec, const Grid3& grid);

/// Solenoidal, mean-free, dealiased field. The pair kind returns its first member.
VectorField make_datum(const DatumSpec& spec, const Grid3& grid);

struct DatumPair {
  VectorField u0;
  VectorField v0;
  double leak = 0.0;  ///< max |u0 - v0| inside the agreement ball
};

/// Pair sharing the mimic base; v0 adds a solenoidal bump centred far from the
/// agreement ball, at distance 0.4 L from the box centre.
DatumPair make_datum_pair(const DatumSpec& spec, const Grid3& grid);

/// Mean-free, generally not solenoidal, dealiased random field whose Fourier
/// coefficients decay like |k|^-a with a seeded a in [0.5, 3].
VectorField random_mean_free_field(const Grid3& grid, std::uint64_t seed, std::uint64_t index);

/// Weak-L^p quasi-norm of amplitude |x|^(-3/p) on R^3.
double mimic_weak_norm(double amplitude, double p);

}  // namespace nslab::lab
