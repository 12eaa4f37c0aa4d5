#include "nslab/analysis/oneil.hpp"

#include <cmath>

#include "nslab/analysis/norms.hpp"
#include "nslab/errors.hpp"
#include "nslab/spectral/fft.hpp"

namespace nslab::analysis {

ConvolutionBound oneil_check(const spectral::ScalarField& f, const spectral::ScalarField& g,
                             double p, double q) {
  require(p > 1.0 && q > 1.0 && std::isfinite(p) && std::isfinite(q),
          "indices must lie in (1, inf)");
  require(std::abs(1.0 / p + 1.0 / q - 1.0) <= 1e-12, "indices must be conjugate");
  require(f.grid() == g.grid(), "grid mismatch");
  const auto& grid = f.grid();
  const auto& fft = spectral::FftEngine::for_size(grid.n());
  std::vector<Complex> fh(grid.spectral_size()), gh(grid.spectral_size());
  fft.forward(f.values(), fh);
  fft.forward(g.values(), gh);
  // (f * g)^ = L^3 f^ g^ with normalized coefficients
  for (std::size_t i = 0; i < fh.size(); ++i) fh[i] *= gh[i] * grid.volume();
  std::vector<double> conv(grid.physical_size());
  fft.inverse(fh, conv);
  double lhs = 0.0;
  for (double v : conv) lhs = std::max(lhs, std::abs(v));
  return ConvolutionBound{lhs, lp_norm(f, q) * weak_lp_norm(g, p)};
}

}  // namespace nslab::analysis
