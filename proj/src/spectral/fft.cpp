#include "nslab/spectral/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "nslab/errors.hpp"

namespace nslab::spectral {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

FftEngine::FftEngine(int n) : n_(n) {
  const std::size_t real_size = static_cast<std::size_t>(n) * n * n;
  const std::size_t complex_size = static_cast<std::size_t>(n) * n * (n / 2 + 1);
  double* real = fftw_alloc_real(real_size);
  fftw_complex* cplx = fftw_alloc_complex(complex_size);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  forward_plan_ = fftw_plan_dft_r2c_3d(n, n, n, real, cplx, flags);
  inverse_plan_ = fftw_plan_dft_c2r_3d(n, n, n, cplx, real, flags);
  fftw_free(real);
  fftw_free(cplx);
  if (forward_plan_ == nullptr || inverse_plan_ == nullptr) {
    throw SolverError("FFTW plan creation failed");
  }
}

// Engines live in a function-local static and die during single-threaded exit.
FftEngine::~FftEngine() {
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
}

const FftEngine& FftEngine::for_size(int n) {
  static std::map<int, std::unique_ptr<FftEngine>> cache;
  std::lock_guard lock(planner_mutex());
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, std::unique_ptr<FftEngine>(new FftEngine(n))).first;
  }
  return *it->second;
}

void FftEngine::forward(std::span<const double> in, std::span<Complex> out) const {
  const std::size_t real_size = static_cast<std::size_t>(n_) * n_ * n_;
  require(in.size() == real_size && out.size() == real_size / n_ * (n_ / 2 + 1),
          "FFT buffer size mismatch");
  fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_), const_cast<double*>(in.data()),
                       reinterpret_cast<fftw_complex*>(out.data()));
  const double scale = 1.0 / static_cast<double>(real_size);
  for (auto& c : out) c *= scale;
}

void FftEngine::inverse(std::span<const Complex> in, std::span<double> out) const {
  const std::size_t real_size = static_cast<std::size_t>(n_) * n_ * n_;
  require(out.size() == real_size && in.size() == real_size / n_ * (n_ / 2 + 1),
          "FFT buffer size mismatch");
  // c2r overwrites its input
  thread_local std::vector<Complex> scratch;
  scratch.assign(in.begin(), in.end());
  fftw_execute_dft_c2r(static_cast<fftw_plan>(inverse_plan_),
                       reinterpret_cast<fftw_complex*>(scratch.data()), out.data());
}

}  // namespace nslab::spectral
