#include "nslab/evolution/pressure.hpp"

#include "nslab/spectral/fft.hpp"

namespace nslab::evolution {

spectral::ScalarField pressure_field(const spectral::VectorField& u) {
  const spectral::Grid3& grid = u.grid();
  const spectral::TensorField t = spectral::tensor_product(u, u, true);
  std::vector<Complex> p(grid.spectral_size());
  const int n = grid.n(), nz = grid.half_modes();
  const auto kf = grid.kd_full();
  const auto kh = grid.kd_half();
  std::size_t idx = 0;
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2)
      for (int l = 0; l < nz; ++l, ++idx) {
        const double k[3] = {kf[i1], kf[i2], kh[l]};
        const double kk = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
        if (kk == 0.0) continue;
        Complex s{};
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) s += k[i] * k[j] * t.component(i, j)[idx];
        p[idx] = -s / kk;
      }
  std::vector<double> values(grid.physical_size());
  spectral::FftEngine::for_size(n).inverse(p, values);
  return spectral::ScalarField(grid, std::move(values));
}

}  // namespace nslab::evolution
