#include "nslab/evolution/duhamel.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <memory>

#include "nslab/errors.hpp"
#include "nslab/evolution/navier_stokes.hpp"
#include "nslab/spectral/operators.hpp"

namespace nslab::evolution {
namespace {

using Spectral = VectorField::SpectralData;

// exp(-|k|^2 dt) arrays keyed by dt.
class HeatFactors {
 public:
  explicit HeatFactors(const Grid3& grid) : grid_(grid) {}
  using Factor = std::shared_ptr<const std::vector<double>>;
  Factor operator()(double dt) {
    auto it = cache_.find(dt);
    if (it != cache_.end()) return it->second;
    if (cache_.size() > 16) cache_.clear();
    auto e = std::make_shared<std::vector<double>>(grid_.spectral_size());
    const auto k2 = grid_.k_squared();
    for (std::size_t i = 0; i < e->size(); ++i) (*e)[i] = std::exp(-k2[i] * dt);
    return cache_.emplace(dt, std::move(e)).first->second;
  }

 private:
  Grid3 grid_;
  std::map<double, Factor> cache_;
};

Spectral zeros(const Grid3& grid) {
  Spectral z;
  for (auto& c : z) c.assign(grid.spectral_size(), Complex{});
  return z;
}

// acc = decay * acc + sum_i w_i exp(-|k|^2 (t - s_i)) d_i
using Factor = std::shared_ptr<const std::vector<double>>;

void accumulate(Spectral& acc, const Factor& decay,
                const std::vector<std::pair<double, Factor>>& terms,
                const std::vector<const Spectral*>& values) {
  const std::size_t m = acc[0].size();
  for (int c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < m; ++i) {
      Complex s = decay ? (*decay)[i] * acc[c][i] : acc[c][i];
      for (std::size_t j = 0; j < terms.size(); ++j)
        s += terms[j].first * (*terms[j].second)[i] * (*values[j])[c][i];
      acc[c][i] = s;
    }
  }
}

void check_pair(const Trajectory& f, const Trajectory& g) {
  require(!f.empty(), "empty trajectory");
  require(f.same_schedule(g), "f and g must share one schedule");
  require(std::abs(f.time(0)) <= 1e-300, "schedule must start at t = 0");
}

}  // namespace

std::vector<double> interpolatory_weights(std::span<const double> nodes) {
  const std::size_t m = nodes.size();
  require(m >= 2, "need at least two nodes");
  const double a = nodes.front();
  const double H = nodes.back() - a;
  require(H > 0.0, "nodes must increase");
  std::vector<double> x(m);
  for (std::size_t i = 0; i < m; ++i) x[i] = (nodes[i] - a) / H;
  std::vector<double> w(m);
  for (std::size_t i = 0; i < m; ++i) {
    // coefficients of the Lagrange basis polynomial l_i on [0, 1]
    std::vector<double> poly{1.0};
    double denom = 1.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      std::vector<double> next(poly.size() + 1, 0.0);
      for (std::size_t d = 0; d < poly.size(); ++d) {
        next[d + 1] += poly[d];
        next[d] -= x[j] * poly[d];
      }
      poly = std::move(next);
      denom *= x[i] - x[j];
    }
    double integral = 0.0;
    for (std::size_t d = 0; d < poly.size(); ++d) integral += poly[d] / static_cast<double>(d + 1);
    w[i] = H * integral / denom;
  }
  return w;
}

Trajectory duhamel_series(const Trajectory& f, const Trajectory& g, bool symmetric, FlowTag tag) {
  check_pair(f, g);
  const Grid3& grid = f.grid();
  const std::size_t count = f.size();
  const auto t = f.times();
  HeatFactors heat(grid);

  auto integrand = [&](std::size_t i) {
    VectorField d = spectral::oseen_propagate(spectral::tensor_product(f.at(i), g.at(i), symmetric), 0.0);
    d *= -1.0;
    return std::move(d.spectral_data());
  };

  Trajectory out(tag);
  out.append(t[0], VectorField::from_spectral(grid, zeros(grid), true));
  if (count == 1) return out;

  std::deque<Spectral> window;  // integrand values at nodes j-2, j-1, j
  std::vector<Spectral> head;   // integrand values at nodes 0..3
  Spectral even = zeros(grid), odd = zeros(grid);
  for (std::size_t j = 0; j < count; ++j) {
    window.push_back(integrand(j));
    if (window.size() > 3) window.pop_front();
    if (j <= 3) head.push_back(window.back());
    if (j == 0) continue;

    if (j == 1) {
      const double h = t[1] - t[0];
      accumulate(odd, Factor{}, {{0.5 * h, heat(h)}, {0.5 * h, heat(0.0)}}, {&head[0], &head[1]});
      out.append(t[1], VectorField::from_spectral(grid, odd, true));
      continue;
    }
    Spectral& acc = (j % 2 == 0) ? even : odd;
    if (j == 3) {
      const auto w = interpolatory_weights(t.subspan(0, 4));
      acc = zeros(grid);
      accumulate(acc, Factor{},
                 {{w[0], heat(t[3] - t[0])}, {w[1], heat(t[3] - t[1])},
                  {w[2], heat(t[3] - t[2])}, {w[3], heat(0.0)}},
                 {&head[0], &head[1], &head[2], &head[3]});
      head.clear();
    } else {
      const auto w = interpolatory_weights(t.subspan(j - 2, 3));
      const double span = t[j] - t[j - 2];
      accumulate(acc, heat(span),
                 {{w[0], heat(span)}, {w[1], heat(t[j] - t[j - 1])}, {w[2], heat(0.0)}},
                 {&window[0], &window[1], &window[2]});
    }
    out.append(t[j], VectorField::from_spectral(grid, acc, true));
  }
  return out;
}

VectorField duhamel_B(const Trajectory& f, const Trajectory& g, double t, bool symmetric) {
  check_pair(f, g);
  require(t >= 0.0 && t <= f.times().back() * (1 + 1e-12), "t lies outside the shared range");
  const std::size_t j = f.index_of(t);
  require(j + 1 >= 9, "Duhamel quadrature needs at least 9 nodes in [0, t]");
  Trajectory fs(FlowTag::derived()), gs(FlowTag::derived());
  for (std::size_t i = 0; i <= j; ++i) {
    fs.append(f.time(i), f.at(i));
    gs.append(g.time(i), g.at(i));
  }
  return duhamel_series(fs, gs, symmetric).back();
}

std::vector<Trajectory> picard_iterates(const VectorField& u0, int k_max,
                                        std::span<const double> times) {
  require(k_max >= 0, "Picard depth must be nonnegative");
  require(!times.empty() && times[0] == 0.0, "Picard schedule must start at t = 0");
  VectorField datum = u0.to_spectral();
  datum.mark_solenoidal(true);
  require(spectral::max_divergence(datum) <=
              1e-10 * std::max(spectral::max_coefficient(datum), 1e-300) * datum.grid().n() *
                  (2.0 * std::acos(-1.0) / datum.grid().length()),
          "Picard datum must be divergence-free");
  std::vector<Trajectory> out;
  Trajectory p0 = evolve_heat(datum, times);
  Trajectory tagged0(FlowTag::picard(0));
  for (std::size_t i = 0; i < p0.size(); ++i) tagged0.append(p0.time(i), p0.at(i));
  out.push_back(std::move(tagged0));
  for (int k = 1; k <= k_max; ++k) {
    const Trajectory b = duhamel_series(out.back(), out.back(), true);
    out.push_back(combine(1.0, out.front(), 1.0, b, FlowTag::picard(k)));
  }
  return out;
}

double periodic_distance(const Grid3& grid, std::array<double, 3> x, std::array<double, 3> center) {
  const double L = grid.length();
  double s = 0.0;
  for (int c = 0; c < 3; ++c) {
    double d = std::fmod(std::abs(x[c] - center[c]), L);
    d = std::min(d, L - d);
    s += d * d;
  }
  return std::sqrt(s);
}

ScalarField radial_cutoff(const Grid3& grid, std::array<double, 3> center, double r_in,
                          double r_out) {
  require(r_in > 0.0 && r_out > r_in, "cutoff radii must satisfy 0 < r_in < r_out");
  require(r_out < 0.5 * grid.length(), "cutoff must fit inside the box");
  return ScalarField::sample(grid, [&](double x, double y, double z) {
    const double r = periodic_distance(grid, {x, y, z}, center);
    if (r <= r_in) return 1.0;
    if (r >= r_out) return 0.0;
    const double s = (r - r_in) / (r_out - r_in);
    return 1.0 - s * s * s * (10.0 - 15.0 * s + 6.0 * s * s);
  });
}

ExpansionTerms expansion_terms(const VectorField& u0, const ScalarField& chi,
                               std::span<const double> times,
                               const std::optional<CutoffGeometry>& geometry) {
  const Grid3& grid = chi.grid();
  require(u0.grid() == grid, "grid mismatch");
  for (double v : chi.values()) require(v >= 0.0 && v <= 1.0, "cutoff values must lie in [0, 1]");
  if (geometry) {
    require(geometry->omega_radius > 0.0 && geometry->omega_radius < geometry->ball_radius,
            "cutoff support violation: need 0 < omega radius < ball radius");
    const int n = grid.n();
    for (int i1 = 0; i1 < n; ++i1)
      for (int i2 = 0; i2 < n; ++i2)
        for (int i3 = 0; i3 < n; ++i3) {
          const double r = periodic_distance(
              grid, {grid.coordinate(i1), grid.coordinate(i2), grid.coordinate(i3)}, geometry->center);
          const double v = chi.values()[grid.physical_index(i1, i2, i3)];
          if (r <= geometry->omega_radius && v <= 0.0)
            throw InvalidArgument("cutoff support violation: cutoff vanishes inside B_Omega");
          if (r >= geometry->ball_radius && v != 0.0)
            throw InvalidArgument("cutoff support violation: cutoff reaches outside B");
        }
  }
  std::vector<Trajectory> picard = picard_iterates(u0, 0, times);
  const Trajectory& p0 = picard[0];
  const Trajectory b00 = duhamel_series(p0, p0, true);
  Trajectory p1 = combine(1.0, p0, 1.0, b00, FlowTag::picard(1));
  // B(P0, G) + B(G', P0 chi) with G = B(P0, P0) chi; since G' (x) P0 chi =
  // G (x) P0 the sum is twice the symmetric form.
  const Trajectory localized = multiply(b00, chi);
  const Trajectory half = duhamel_series(p0, localized, true);
  Trajectory p2_tilde(FlowTag::derived());
  for (std::size_t i = 0; i < half.size(); ++i) {
    VectorField v = 2.0 * half.at(i);
    v.mark_solenoidal(true);
    p2_tilde.append(half.time(i), std::move(v));
  }
  Trajectory p_omega = combine(1.0, p1, 1.0, p2_tilde, FlowTag::derived());
  return ExpansionTerms{std::move(p1), std::move(p2_tilde), std::move(p_omega)};
}

}  // namespace nslab::evolution
