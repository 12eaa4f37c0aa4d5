#pragma once

#include <span>

#include "nslab/spectral/grid.hpp"

namespace nslab::spectral {

/// Real 3-D DFT pair for one grid size, backed by FFTW.
///
/// forward() divides by n^3 so that cos(2 pi x / L) has coefficient 1/2 on
/// modes +-1. Execution is thread-safe; plans are created once per size.
class FftEngine {
 public:
  static const FftEngine& for_size(int n);

  void forward(std::span<const double> in, std::span<Complex> out) const;
  /// Does not modify `in`.
  void inverse(std::span<const Complex> in, std::span<double> out) const;

  FftEngine(const FftEngine&) = delete;
  FftEngine& operator=(const FftEngine&) = delete;
  ~FftEngine();

 private:
  explicit FftEngine(int n);
  int n_;
  void* forward_plan_;
  void* inverse_plan_;
};

}  // namespace nslab::spectral
