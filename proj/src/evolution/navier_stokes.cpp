#include "nslab/evolution/navier_stokes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nslab/errors.hpp"
#include "nslab/spectral/fft.hpp"
#include "nslab/spectral/operators.hpp"

namespace nslab::evolution {
namespace {

using Spectral = VectorField::SpectralData;
constexpr Complex kI{0.0, 1.0};

// Evaluates -P div(u (x) u) with dealiasing; also reports the summed
// componentwise maxima of u for the CFL test.
class NonlinearOperator {
 public:
  explicit NonlinearOperator(const Grid3& grid)
      : grid_(grid), fft_(spectral::FftEngine::for_size(grid.n())) {
    for (auto& c : u_) c.resize(grid.physical_size());
    product_.resize(grid.physical_size());
    for (auto& c : t_) c.resize(grid.spectral_size());
  }

  double evaluate(const Spectral& uh, Spectral& out) {
    double speed = 0.0;
    for (int c = 0; c < 3; ++c) {
      fft_.inverse(uh[c], u_[c]);
      double m = 0.0;
      for (double v : u_[c]) m = std::max(m, std::abs(v));
      speed += m;
    }
    static constexpr int pairs[6][2] = {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}};
    for (int p = 0; p < 6; ++p) {
      const auto& a = u_[pairs[p][0]];
      const auto& b = u_[pairs[p][1]];
      for (std::size_t x = 0; x < product_.size(); ++x) product_[x] = a[x] * b[x];
      fft_.forward(product_, t_[p]);
    }
    const int n = grid_.n(), nz = grid_.half_modes();
    const auto kf = grid_.kd_full();
    const auto kh = grid_.kd_half();
    for (auto& c : out) c.resize(grid_.spectral_size());
    std::size_t idx = 0;
    for (int i1 = 0; i1 < n; ++i1) {
      for (int i2 = 0; i2 < n; ++i2) {
        for (int l = 0; l < nz; ++l, ++idx) {
          if (!grid_.resolved(i1, i2, l)) {
            out[0][idx] = out[1][idx] = out[2][idx] = Complex{};
            continue;
          }
          const double k1 = kf[i1], k2 = kf[i2], k3 = kh[l];
          const Complex t00 = t_[0][idx], t01 = t_[1][idx], t02 = t_[2][idx];
          const Complex t11 = t_[3][idx], t12 = t_[4][idx], t22 = t_[5][idx];
          Complex v1 = -kI * (k1 * t00 + k2 * t01 + k3 * t02);
          Complex v2 = -kI * (k1 * t01 + k2 * t11 + k3 * t12);
          Complex v3 = -kI * (k1 * t02 + k2 * t12 + k3 * t22);
          const double kk = k1 * k1 + k2 * k2 + k3 * k3;
          if (kk > 0.0) {
            const Complex kv = (k1 * v1 + k2 * v2 + k3 * v3) / kk;
            v1 -= k1 * kv;
            v2 -= k2 * kv;
            v3 -= k3 * kv;
          }
          out[0][idx] = v1;
          out[1][idx] = v2;
          out[2][idx] = v3;
        }
      }
    }
    return speed;
  }

 private:
  Grid3 grid_;
  const spectral::FftEngine& fft_;
  std::array<std::vector<double>, 3> u_;
  std::vector<double> product_;
  std::array<std::vector<Complex>, 6> t_;
};

double parseval_energy(const Grid3& grid, const Spectral& uh) {
  const int n = grid.n(), nz = grid.half_modes();
  double sum = 0.0;
  for (int c = 0; c < 3; ++c) {
    std::size_t idx = 0;
    for (int i1 = 0; i1 < n; ++i1)
      for (int i2 = 0; i2 < n; ++i2)
        for (int l = 0; l < nz; ++l, ++idx) sum += grid.half_weight(l) * std::norm(uh[c][idx]);
  }
  return sum * grid.volume();
}

class Stepper {
 public:
  Stepper(const Grid3& grid, const NsOptions& options)
      : grid_(grid), options_(options), op_(grid) {}

  // One IF-RK4 step of size h in place.
  void step(Spectral& u, double h) {
    if (h != cached_h_) {
      const auto k2 = grid_.k_squared();
      full_.resize(k2.size());
      half_.resize(k2.size());
      for (std::size_t i = 0; i < k2.size(); ++i) {
        full_[i] = std::exp(-k2[i] * h);
        half_[i] = std::exp(-k2[i] * 0.5 * h);
      }
      cached_h_ = h;
    }
    const double speed = op_.evaluate(u, k1_);
    const double courant = h * speed / grid_.spacing();
    if (courant > options_.cfl) {
      std::ostringstream msg;
      msg << "CFL violation: dt * sum max|u_i| / h = " << courant << " exceeds " << options_.cfl;
      throw SolverError(msg.str());
    }
    const std::size_t m = grid_.spectral_size();
    for (int c = 0; c < 3; ++c) {
      stage_[c].resize(m);
      for (std::size_t i = 0; i < m; ++i) stage_[c][i] = half_[i] * (u[c][i] + 0.5 * h * k1_[c][i]);
    }
    op_.evaluate(stage_, k2_);
    for (int c = 0; c < 3; ++c)
      for (std::size_t i = 0; i < m; ++i) stage_[c][i] = half_[i] * u[c][i] + 0.5 * h * k2_[c][i];
    op_.evaluate(stage_, k3_);
    for (int c = 0; c < 3; ++c)
      for (std::size_t i = 0; i < m; ++i) stage_[c][i] = full_[i] * u[c][i] + h * half_[i] * k3_[c][i];
    op_.evaluate(stage_, k4_);
    for (int c = 0; c < 3; ++c)
      for (std::size_t i = 0; i < m; ++i)
        u[c][i] = full_[i] * u[c][i] +
                  h / 6.0 * (full_[i] * k1_[c][i] + 2.0 * half_[i] * (k2_[c][i] + k3_[c][i]) + k4_[c][i]);
  }

 private:
  Grid3 grid_;
  NsOptions options_;
  NonlinearOperator op_;
  double cached_h_ = -1.0;
  std::vector<double> full_, half_;
  Spectral k1_, k2_, k3_, k4_, stage_;
};

void validate_datum(const VectorField& u) {
  const Grid3& grid = u.grid();
  const double scale = spectral::max_coefficient(u);
  if (scale == 0.0) return;
  require(spectral::max_divergence(u) <= 1e-10 * scale * (2.0 * std::acos(-1.0) * grid.n() / grid.length()),
          "initial datum is not divergence-free");
  const auto& d = u.spectral_data();
  for (int c = 0; c < 3; ++c)
    require(std::abs(d[c][0]) <= 1e-12 * scale, "initial datum must be mean-free");
  const int n = grid.n(), nz = grid.half_modes();
  std::size_t idx = 0;
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2)
      for (int l = 0; l < nz; ++l, ++idx)
        if (!grid.resolved(i1, i2, l))
          for (int c = 0; c < 3; ++c)
            require(std::abs(d[c][idx]) <= 1e-14 * scale, "initial datum must be dealiased");
}

}  // namespace

Trajectory evolve_ns(const VectorField& u0, std::span<const double> schedule,
                     const NsOptions& options) {
  require(options.dt > 0.0 && std::isfinite(options.dt), "time step must be positive");
  require(options.cfl > 0.0, "CFL constant must be positive");
  require(!schedule.empty(), "schedule must not be empty");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    require(std::isfinite(schedule[i]) && schedule[i] >= 0.0, "schedule times must be nonnegative");
    if (i > 0) require(schedule[i] > schedule[i - 1], "schedule times must increase");
  }
  VectorField state = u0.to_spectral();
  validate_datum(state);
  const Grid3 grid = state.grid();
  Spectral u = state.spectral_data();
  const double e0 = parseval_energy(grid, u);
  Stepper stepper(grid, options);
  Trajectory traj(FlowTag::ns());
  double t = 0.0;
  for (double target : schedule) {
    while (target - t > 1e-13 * std::max(1.0, target)) {
      double h = std::min(options.dt, target - t);
      // absorb a sliver left by rounding into the final step
      if (target - t - options.dt <= 1e-9 * options.dt) h = target - t;
      stepper.step(u, std::abs(h - options.dt) <= 1e-12 * options.dt ? options.dt : h);
      t = (h == target - t) ? target : t + h;
      const double e = parseval_energy(grid, u);
      if (!std::isfinite(e) || (e0 > 0.0 && e > options.blowup_factor * e0)) {
        std::ostringstream msg;
        msg << "blow-up guard: energy " << e << " at t = " << t << " exceeds "
            << options.blowup_factor << " x initial energy " << e0;
        throw SolverError(msg.str());
      }
    }
    t = target;
    traj.append(target, VectorField::from_spectral(grid, u, true));
  }
  return traj;
}

Trajectory evolve_heat(const VectorField& u0, std::span<const double> times) {
  Trajectory traj(u0.solenoidal() ? FlowTag::heat() : FlowTag::derived());
  const VectorField base = u0.to_spectral();
  for (double t : times) traj.append(t, spectral::heat_semigroup(base, t));
  return traj;
}

VectorField nonlinear_term(const VectorField& u) {
  const VectorField s = u.to_spectral();
  NonlinearOperator op(s.grid());
  Spectral out;
  op.evaluate(s.spectral_data(), out);
  return VectorField::from_spectral(s.grid(), std::move(out), true);
}

double energy(const VectorField& u) {
  const VectorField s = u.to_spectral();
  return parseval_energy(s.grid(), s.spectral_data());
}

double enstrophy(const VectorField& u) {
  const VectorField s = u.to_spectral();
  const Grid3& grid = s.grid();
  const auto& d = s.spectral_data();
  const int n = grid.n(), nz = grid.half_modes();
  const auto kf = grid.kd_full();
  const auto kh = grid.kd_half();
  double sum = 0.0;
  for (int c = 0; c < 3; ++c) {
    std::size_t idx = 0;
    for (int i1 = 0; i1 < n; ++i1)
      for (int i2 = 0; i2 < n; ++i2)
        for (int l = 0; l < nz; ++l, ++idx)
          sum += grid.half_weight(l) * (kf[i1] * kf[i1] + kf[i2] * kf[i2] + kh[l] * kh[l]) *
                 std::norm(d[c][idx]);
  }
  return sum * grid.volume();
}

}  // namespace nslab::evolution
