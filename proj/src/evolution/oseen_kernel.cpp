#include "nslab/evolution/oseen_kernel.hpp"

#include <cmath>

#include "nslab/errors.hpp"
#include "nslab/spectral/fft.hpp"

namespace nslab::evolution {

std::vector<OseenSample> oseen_kernel_check(const spectral::Grid3& grid,
                                            std::span<const double> t_values,
                                            std::span<const std::array<double, 3>> sample_points) {
  const double L = grid.length();
  const double h = grid.spacing();
  const int n = grid.n(), nz = grid.half_modes();
  std::vector<std::array<int, 3>> nodes;
  for (const auto& x : sample_points) {
    const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    require(r <= 0.25 * L, "sample point too close to the box boundary");
    std::array<int, 3> node;
    for (int c = 0; c < 3; ++c) node[c] = static_cast<int>(std::lround(x[c] / h));
    nodes.push_back(node);
  }
  for (double t : t_values)
    require(t > 0.0 && std::sqrt(t) <= L / 8.0, "kernel time must satisfy 0 < sqrt(t) <= L/8");

  const auto& fft = spectral::FftEngine::for_size(n);
  const auto kf = grid.kd_full();
  const auto kh = grid.kd_half();
  const auto k2 = grid.k_squared();
  std::vector<Complex> symbol(grid.spectral_size());
  std::vector<double> component(grid.physical_size());
  static constexpr int pairs[6][2] = {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}};
  std::vector<OseenSample> rows;
  for (double t : t_values) {
    std::vector<double> frob(nodes.size(), 0.0);
    for (const auto& pr : pairs) {
      std::size_t idx = 0;
      for (int i1 = 0; i1 < n; ++i1)
        for (int i2 = 0; i2 < n; ++i2)
          for (int l = 0; l < nz; ++l, ++idx) {
            const double k[3] = {kf[i1], kf[i2], kh[l]};
            const double kk = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
            const double proj = (pr[0] == pr[1] ? 1.0 : 0.0) - (kk > 0.0 ? k[pr[0]] * k[pr[1]] / kk : 0.0);
            symbol[idx] = std::exp(-t * k2[idx]) * proj / (L * L * L);
          }
      fft.inverse(symbol, component);
      const double weight = pr[0] == pr[1] ? 1.0 : 2.0;
      for (std::size_t s = 0; s < nodes.size(); ++s) {
        const auto& node = nodes[s];
        const std::size_t p = grid.physical_index((node[0] % n + n) % n, (node[1] % n + n) % n,
                                                  (node[2] % n + n) % n);
        frob[s] += weight * component[p] * component[p];
      }
    }
    for (std::size_t s = 0; s < nodes.size(); ++s) {
      const std::array<double, 3> x{nodes[s][0] * h, nodes[s][1] * h, nodes[s][2] * h};
      const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
      const double mag = std::sqrt(frob[s]);
      rows.push_back({x, t, mag, mag * std::pow(r + std::sqrt(t), 3)});
    }
  }
  return rows;
}

}  // namespace nslab::evolution
