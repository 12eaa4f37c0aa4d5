#include "nslab/analysis/exponents.hpp"

#include <cmath>

#include "nslab/errors.hpp"

namespace nslab::analysis {

SigmaExponents sigma_exponents(double p) {
  require(std::isfinite(p) && p > 2.0 && p <= 3.0, "integrability index must lie in (2, 3]");
  return SigmaExponents{p, 0.5 * (p - 2.0) / (4.0 - p), 0.5 * (p - 2.0), 1.5 - 3.0 / p};
}

double spacetime_index(double q) {
  require(std::isfinite(q) && q > 1.5 && q < 3.0, "space index must lie in (3/2, 3)");
  return 2.0 * q / (2.0 * q - 3.0);
}

}  // namespace nslab::analysis
