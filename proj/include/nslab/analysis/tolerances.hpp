#pragma once

/// @file tolerances.hpp
/// Declared slack for comparing grid quantities with continuum statements.

namespace nslab::analysis::tolerance {

/// Quasi-norm persistence and convolution bounds.
inline constexpr double tight = 0.01;
/// Heat smoothing estimates in Lebesgue norms.
inline constexpr double moderate = 0.05;
/// Sampled singular profiles against closed forms.
inline constexpr double profile = 0.15;

/// Default exponent slack per scenario family.
inline constexpr double decay_exponent = 0.10;
inline constexpr double spacetime_exponent = 0.10;
inline constexpr double expansion_exponent = 0.15;
inline constexpr double separation_exponent = 0.15;

}  // namespace nslab::analysis::tolerance
