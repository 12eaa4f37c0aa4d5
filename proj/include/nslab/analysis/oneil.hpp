#pragma once

#include "nslab/spectral/fields.hpp"

namespace nslab::analysis {

struct ConvolutionBound {
  double lhs;  ///< ||f * g||_inf
  double rhs;  ///< ||f||_{L^q} ||g||_{L^{p,inf}}
};

/// Periodic convolution f * g via transforms against the Young-O'Neil
/// bound. p and q must be conjugate.
ConvolutionBound oneil_check(const spectral::ScalarField& f, const spectral::ScalarField& g,
                             double p, double q);

}  // namespace nslab::analysis
