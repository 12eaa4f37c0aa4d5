#pragma once

#include <array>
#include <span>
#include <vector>

#include "nslab/spectral/grid.hpp"

namespace nslab::evolution {

struct OseenSample {
  std::array<double, 3> x;  ///< displacement of the grid node used
  double t;
  double magnitude;  ///< Frobenius norm |S(x, t)|
  double ratio;      ///< |S(x, t)| (|x| + sqrt t)^3
};

/// Synthesizes S(., t) from its symbol exp(-t |k|^2)(I - k k^T / |k|^2)
/// (identity at k = 0) and samples it at the grid nodes nearest to the
/// requested displacements. Requires |x| <= L/4 and sqrt t <= L/8.
std::vector<OseenSample> oseen_kernel_check(const spectral::Grid3& grid,
                                            std::span<const double> t_values,
                                            std::span<const std::array<double, 3>> sample_points);

}  // namespace nslab::evolution
