#include "nslab/evolution/energy.hpp"

#include <algorithm>
#include <cmath>

#include "nslab/analysis/norms.hpp"
#include "nslab/errors.hpp"
#include "nslab/evolution/duhamel.hpp"
#include "nslab/evolution/navier_stokes.hpp"
#include "nslab/evolution/pressure.hpp"
#include "nslab/random.hpp"
#include "nslab/spectral/operators.hpp"

namespace nslab::evolution {
namespace {

// Smooth step h(s): 0 for s <= 0, 1 for s >= 1, built from exp(-1/s).
double smooth_step(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / s), b = std::exp(-1.0 / (1.0 - s));
  return a / (a + b);
}

double smooth_step_derivative(double s) {
  if (s <= 0.0 || s >= 1.0) return 0.0;
  const double a = std::exp(-1.0 / s), b = std::exp(-1.0 / (1.0 - s));
  const double da = a / (s * s), db = -b / ((1.0 - s) * (1.0 - s));
  return (da * (a + b) - a * (da + db)) / ((a + b) * (a + b));
}

double trapezoid_step(double t0, double t1, double f0, double f1) {
  return 0.5 * (t1 - t0) * (f0 + f1);
}

}  // namespace

std::vector<double> running_integral(std::span<const double> times, std::span<const double> values) {
  require(times.size() == values.size(), "times and values differ in length");
  const std::size_t m = times.size();
  std::vector<double> out(m, 0.0);
  if (m < 2) return out;
  out[1] = trapezoid_step(times[0], times[1], values[0], values[1]);
  const auto panel = [&](std::size_t first, std::size_t count) {
    const auto w = interpolatory_weights(times.subspan(first, count));
    double sum = 0.0;
    for (std::size_t i = 0; i < count; ++i) sum += w[i] * values[first + i];
    return sum;
  };
  for (std::size_t k = 2; k < m; k += 2) out[k] = out[k - 2] + panel(k - 2, 3);
  if (m > 3) out[3] = panel(0, 4);
  for (std::size_t k = 5; k < m; k += 2) out[k] = out[k - 2] + panel(k - 2, 3);
  return out;
}

TestFunction bump_test_function(const Grid3& grid, Point center, int m, double t_on, double ramp) {
  require(ramp > 0.0, "time ramp must be positive");
  require(m >= 0, "bump degree must be nonnegative");
  const auto eta = [=](double t) { return smooth_step((t - t_on) / ramp); };
  const auto deta = [=](double t) { return smooth_step_derivative((t - t_on) / ramp) / ramp; };
  const double w = 2.0 * std::acos(-1.0) / grid.length();
  // per-axis factor g(theta) = ((1 + cos theta) / 2)^m and its x-derivatives
  struct Axis {
    double g, dg, ddg;
  };
  const auto axes = [=](const Point& x) {
    std::array<Axis, 3> a;
    for (int i = 0; i < 3; ++i) {
      const double th = w * (x[i] - center[i]);
      const double c = 0.5 * (1.0 + std::cos(th));
      const double s = std::sin(th);
      const double cm2 = m >= 2 ? std::pow(c, m - 2) : 0.0;
      const double cm1 = m >= 1 ? std::pow(c, m - 1) : 0.0;
      a[i].g = m == 0 ? 1.0 : std::pow(c, m);
      a[i].dg = -0.5 * m * cm1 * s * w;
      a[i].ddg = (0.25 * m * (m - 1) * cm2 * s * s - 0.5 * m * cm1 * std::cos(th)) * w * w;
    }
    return a;
  };
  const auto psi = [=](const Point& x) {
    const auto a = axes(x);
    return a[0].g * a[1].g * a[2].g;
  };
  return TestFunction{
      [=](const Point& x, double t) { return eta(t) * psi(x); },
      [=](const Point& x, double t) { return deta(t) * psi(x); },
      [=](const Point& x, double t) {
        const auto a = axes(x);
        const double e = eta(t);
        return Point{e * a[0].dg * a[1].g * a[2].g, e * a[0].g * a[1].dg * a[2].g,
                     e * a[0].g * a[1].g * a[2].dg};
      },
      [=](const Point& x, double t) {
        const auto a = axes(x);
        return eta(t) * (a[0].ddg * a[1].g * a[2].g + a[0].g * a[1].ddg * a[2].g +
                         a[0].g * a[1].g * a[2].ddg);
      }};
}

double local_energy_residual(const Trajectory& traj, const TestFunction& phi, double t) {
  const std::vector<TestFunction> one{phi};
  const std::vector<double> at{t};
  return local_energy_residuals(traj, one, at)[0][0];
}

std::vector<std::vector<double>> local_energy_residuals(const Trajectory& traj,
                                                        std::span<const TestFunction> phis,
                                                        std::span<const double> t_ends) {
  require(!traj.empty(), "empty trajectory");
  std::vector<std::size_t> ends;
  for (double t : t_ends) ends.push_back(traj.index_of(t));
  const std::size_t last = ends.empty() ? 0 : *std::max_element(ends.begin(), ends.end());
  const Grid3& grid = traj.grid();
  const int n = grid.n();
  const double cell = grid.cell_measure();
  const std::size_t nf = phis.size();

  // integrand[f][s] and endpoint[f][s] for every snapshot up to the last end time
  std::vector<std::vector<double>> integrand(nf, std::vector<double>(last + 1));
  std::vector<std::vector<double>> endpoint(nf, std::vector<double>(last + 1));
  for (std::size_t s = 0; s <= last; ++s) {
    const double ts = traj.time(s);
    const VectorField u = traj.at(s).to_physical();
    const auto grad = spectral::velocity_gradient(traj.at(s));
    const ScalarField p = pressure_field(traj.at(s));
    for (std::size_t f = 0; f < nf; ++f) {
      const TestFunction& phi = phis[f];
      double a = 0.0, b = 0.0, c = 0.0, e = 0.0;
      for (int i1 = 0; i1 < n; ++i1)
        for (int i2 = 0; i2 < n; ++i2)
          for (int i3 = 0; i3 < n; ++i3) {
            const Point x{grid.coordinate(i1), grid.coordinate(i2), grid.coordinate(i3)};
            const std::size_t idx = grid.physical_index(i1, i2, i3);
            const double value = phi.value(x, ts);
            if (value < 0.0) throw InvalidArgument("test function is negative");
            if (s == 0 && value != 0.0)
              throw InvalidArgument("unsupported time range: test function must vanish at the first snapshot");
            const double u1 = u.physical(0)[idx], u2 = u.physical(1)[idx], u3 = u.physical(2)[idx];
            const double uu = u1 * u1 + u2 * u2 + u3 * u3;
            double gg = 0.0;
            for (const auto& g : grad) gg += g[idx] * g[idx];
            const Point dphi = phi.gradient(x, ts);
            a += gg * value;
            b += uu * (phi.time_derivative(x, ts) + phi.laplacian(x, ts));
            c += (uu + 2.0 * p.values()[idx]) * (u1 * dphi[0] + u2 * dphi[1] + u3 * dphi[2]);
            e += value * uu;
          }
      integrand[f][s] = (2.0 * a - b - c) * cell;
      endpoint[f][s] = e * cell;
    }
  }
  std::vector<std::vector<double>> out(nf, std::vector<double>(ends.size()));
  for (std::size_t f = 0; f < nf; ++f) {
    const auto running = running_integral(traj.times().first(last + 1), integrand[f]);
    for (std::size_t k = 0; k < ends.size(); ++k) out[f][k] = endpoint[f][ends[k]] + running[ends[k]];
  }
  return out;
}

PerturbedEnergyCheck perturbed_energy_check(const Trajectory& u, const Trajectory& v, double c_l) {
  require(c_l > 0.0 && std::isfinite(c_l), "Ladyzhenskaya constant must be positive");
  require(!u.empty() && u.same_schedule(v), "mismatched schedules");
  PerturbedEnergyCheck out;
  EnergyLedger& ledger = out.ledger;
  ledger.c_l = c_l;
  const double mu_rate = std::pow(c_l, 8) / 4.0 * std::pow(EnergyLedger::epsilon1, -7);
  double dissipation = 0.0, v8_integral = 0.0, v4_integral = 0.0;
  double previous_enstrophy = 0.0;
  double w0 = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const VectorField w = u.at(i) - v.at(i);
    const double e = energy(w);
    const double ens = enstrophy(w);
    const double v4 = std::pow(analysis::lp_norm(v.at(i), 4.0), 4);
    if (i == 0) {
      w0 = e;
    } else {
      const double t0 = u.time(i - 1), t1 = u.time(i);
      dissipation += trapezoid_step(t0, t1, previous_enstrophy, ens);
      v8_integral += trapezoid_step(t0, t1, ledger.v4.back() * ledger.v4.back(), v4 * v4);
      v4_integral += trapezoid_step(t0, t1, ledger.v4.back(), v4);
    }
    previous_enstrophy = ens;
    const double mu = std::exp(mu_rate * v8_integral);
    ledger.times.push_back(u.time(i));
    ledger.energy.push_back(e);
    ledger.dissipation.push_back(dissipation);
    ledger.v4.push_back(v4);
    ledger.mu.push_back(mu);
    out.lhs.push_back(e + 0.5 * dissipation);
    out.rhs.push_back(mu * (w0 + v4_integral / EnergyLedger::epsilon2));
  }
  return out;
}

double calibrate_ladyzhenskaya(const Grid3& grid, int samples, std::uint64_t seed) {
  require(samples >= 1, "need at least one calibration sample");
  const CounterRng rng(seed, 0x4c4144ULL);
  const double L = grid.length();
  double best = 0.0;
  for (int s = 0; s < samples; ++s) {
    const CounterRng r = rng.substream(static_cast<std::uint64_t>(s));
    VectorField f = VectorField::zeros(grid);
    if (s % 2 == 0) {
      // filtered white noise with random slope and cutoff
      std::uint64_t counter = 0;
      for (int c = 0; c < 3; ++c)
        for (double& x : f.physical(c)) x = r.normal(counter++);
      const double slope = r.uniform(1u << 30, 0.0, 4.0);
      const double k_cut = r.uniform((1u << 30) + 1, 1.0, grid.n() / 3.0) * 2.0 * std::acos(-1.0) / L;
      VectorField g = f.to_spectral();
      const auto k2 = grid.k_squared();
      for (auto& comp : g.spectral_data())
        for (std::size_t i = 0; i < comp.size(); ++i)
          comp[i] *= k2[i] == 0.0 ? 0.0 : std::pow(k2[i], -0.5 * slope) * std::exp(-k2[i] / (k_cut * k_cut));
      f = spectral::dealias(g);
    } else {
      const double width = r.uniform(0, 1.5, 0.12 * grid.n()) * grid.spacing();
      const Point dir{r.normal(1), r.normal(2), r.normal(3)};
      f = VectorField::sample(grid, [&](double x, double y, double z) {
        const double c = 0.5 * L;
        const double rr = ((x - c) * (x - c) + (y - c) * (y - c) + (z - c) * (z - c)) / (width * width);
        const double e = std::exp(-0.5 * rr);
        return std::array<double, 3>{dir[0] * e, dir[1] * e, dir[2] * e};
      });
    }
    const double l2 = std::sqrt(energy(f));
    const double grad = std::sqrt(enstrophy(f));
    if (l2 == 0.0 || grad == 0.0) continue;
    best = std::max(best, analysis::lp_norm(f, 4.0) / (std::pow(l2, 0.25) * std::pow(grad, 0.75)));
  }
  return best;
}

}  // namespace nslab::evolution
