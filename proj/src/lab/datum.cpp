#include "nslab/lab/datum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nslab/errors.hpp"
#include "nslab/random.hpp"
#include "nslab/spectral/operators.hpp"

namespace nslab::lab {

namespace {

using Vec3 = std::array<double, 3>;

double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / x), b = std::exp(-1.0 / (1.0 - x));
  return a / (a + b);
}

/// Minimum-image displacement x - c on the periodic box.
Vec3 displacement(const Grid3& g, const Vec3& x, const Vec3& c) {
  Vec3 d;
  const double L = g.length();
  for (int i = 0; i < 3; ++i) d[i] = x[i] - c[i] - L * std::round((x[i] - c[i]) / L);
  return d;
}

double norm(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Vec3 random_direction(const CounterRng& rng) {
  Vec3 v{rng.normal(0), rng.normal(1), rng.normal(2)};
  const double m = norm(v);
  if (!(m > 1e-8)) return {0.0, 0.0, 1.0};
  for (double& x : v) x /= m;
  return v;
}

Vec3 box_centre(const Grid3& g) {
  const double c = 0.5 * g.length();
  return {c, c, c};
}

/// Leray projection, zero mean and two-thirds truncation.
VectorField finish(const VectorField& raw) {
  VectorField f = spectral::dealias(spectral::leray_project(raw));
  for (int c = 0; c < 3; ++c) f.spectral(c)[0] = Complex{};
  f.mark_solenoidal(true);
  return f;
}

/// amplitude (r^2 + eps^2)^(-3/(2p)) psi_out(r) e(x_hat) around `core`, unprojected.
VectorField mimic_profile(const DatumSpec& spec, const Grid3& g, const Vec3& core) {
  const CounterRng rng(spec.seed, 0x6d696d6963ULL);
  const Vec3 axis = random_direction(rng);
  const double kappa = rng.uniform(3, 0.3, 0.6);
  const double eps2 = spec.core_radius * spec.core_radius;
  const double R = spec.envelope_radius;
  return VectorField::sample(g, [&](double x, double y, double z) {
    const Vec3 d = displacement(g, {x, y, z}, core);
    const double r = norm(d);
    const double envelope = smooth_step((2.0 * R - r) / R);
    if (envelope == 0.0) return Vec3{};
    // unit profile: swirl about `axis` plus a constant axial part, never zero
    Vec3 e = r > 0.0 ? cross(axis, Vec3{d[0] / r, d[1] / r, d[2] / r}) : Vec3{};
    for (int i = 0; i < 3; ++i) e[i] += kappa * axis[i];
    const double em = norm(e);
    const double s = spec.amplitude * std::pow(r * r + eps2, -1.5 / spec.p) * envelope / em;
    return Vec3{s * e[0], s * e[1], s * e[2]};
  });
}

/// curl of a Gaussian vector potential, rescaled to peak magnitude `peak`.
VectorField gaussian_curl(const Grid3& g, const Vec3& centre, double sigma, const Vec3& dir,
                          double peak) {
  VectorField potential = VectorField::sample(g, [&](double x, double y, double z) {
    const double r = norm(displacement(g, {x, y, z}, centre));
    const double w = std::exp(-0.5 * r * r / (sigma * sigma));
    return Vec3{w * dir[0], w * dir[1], w * dir[2]};
  });
  VectorField f = spectral::dealias(spectral::curl(potential));
  for (int c = 0; c < 3; ++c) f.spectral(c)[0] = Complex{};
  const double m = spectral::max_magnitude(f);
  if (m > 0.0) f *= peak / m;
  f.mark_solenoidal(true);
  return f;
}

}  // namespace

std::string to_string(DatumKind kind) {
  switch (kind) {
    case DatumKind::homogeneous_mimic: return "homogeneous_mimic";
    case DatumKind::localized_bounded: return "localized_bounded";
    case DatumKind::pair_agreeing_locally: return "pair_agreeing_locally";
    case DatumKind::single_mode: return "single_mode";
    case DatumKind::gaussian_bump: return "gaussian_bump";
  }
  return "unknown";
}

DatumKind datum_kind_from_string(const std::string& name) {
  for (DatumKind k : {DatumKind::homogeneous_mimic, DatumKind::localized_bounded,
                      DatumKind::pair_agreeing_locally, DatumKind::single_mode,
                      DatumKind::gaussian_bump})
    if (to_string(k) == name) return k;
  throw InvalidArgument("unknown datum kind '" + name + "'");
}

void validate(const DatumSpec& spec, const Grid3& grid) {
  const double L = grid.length();
  require(std::isfinite(spec.amplitude) && spec.amplitude > 0.0, "datum amplitude must be positive");
  require(spec.core_radius >= 2.0 * L / grid.n() * (1.0 - 1e-12),
          "core radius must be at least two grid spacings");
  require(spec.envelope_radius > 0.0 && spec.envelope_radius <= 0.25 * L * (1.0 + 1e-12),
          "envelope radius must lie in (0, L/4]");
  require(spec.p > 2.0 && spec.p <= 3.0, "datum index p must lie in (2, 3]");
  if (spec.kind == DatumKind::pair_agreeing_locally) {
    require(spec.agreement_radius > 0.0 && spec.agreement_radius < 0.25 * L,
            "agreement radius must lie in (0, L/4)");
    require(spec.perturbation_amplitude >= 0.0 && std::isfinite(spec.perturbation_amplitude),
            "perturbation amplitude must be nonnegative");
  }
}

double mimic_weak_norm(double amplitude, double p) {
  return amplitude * std::pow(4.0 * std::numbers::pi / 3.0, 1.0 / p);
}

VectorField make_datum(const DatumSpec& spec, const Grid3& grid) {
  validate(spec, grid);
  const Vec3 c = box_centre(grid);
  switch (spec.kind) {
    case DatumKind::homogeneous_mimic:
      return finish(mimic_profile(spec, grid, c));
    case DatumKind::localized_bounded: {
      // singular core moved a distance R_env away so the profile is bounded near the centre
      const Vec3 core{c[0] + spec.envelope_radius, c[1], c[2]};
      return finish(mimic_profile(spec, grid, core));
    }
    case DatumKind::pair_agreeing_locally:
      return make_datum_pair(spec, grid).u0;
    case DatumKind::single_mode: {
      const CounterRng rng(spec.seed, 0x6d6f6465ULL);
      const int axis = static_cast<int>(rng.bits(0) % 3);
      const int comp = (axis + 1 + static_cast<int>(rng.bits(1) % 2)) % 3;
      const double w = 2.0 * std::numbers::pi / grid.length();
      VectorField f = VectorField::sample(grid, [&](double x, double y, double z) {
        const Vec3 p{x, y, z};
        Vec3 v{};
        v[comp] = spec.amplitude * std::sin(w * p[axis]);
        return v;
      });
      return finish(f);
    }
    case DatumKind::gaussian_bump: {
      const CounterRng rng(spec.seed, 0x6761757373ULL);
      return gaussian_curl(grid, c, spec.envelope_radius / 3.0, random_direction(rng),
                           spec.amplitude);
    }
  }
  throw InvalidArgument("unsupported datum kind");
}

VectorField random_mean_free_field(const Grid3& g, std::uint64_t seed, std::uint64_t index) {
  const CounterRng rng = CounterRng(seed, 0x68656174ULL).substream(index);
  const double slope = rng.uniform(1ull << 40, 0.5, 3.0);
  VectorField f = VectorField::zeros(g, spectral::Representation::spectral);
  const auto k2 = g.k_squared();
  std::uint64_t counter = 0;
  for (int c = 0; c < 3; ++c) {
    auto coeffs = f.spectral(c);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      const double a = rng.normal(counter++), b = rng.normal(counter++);
      coeffs[i] = k2[i] == 0.0 ? Complex{} : Complex{a, b} * std::pow(k2[i], -0.5 * slope);
    }
  }
  // the round trip symmetrises the self-conjugate planes
  return spectral::dealias(f.to_physical().to_spectral());
}

DatumPair make_datum_pair(const DatumSpec& spec, const Grid3& grid) {
  validate(spec, grid);
  require(spec.kind == DatumKind::pair_agreeing_locally, "datum kind is not a pair");
  const Vec3 c = box_centre(grid);
  DatumPair out{finish(mimic_profile(spec, grid, c)), VectorField::zeros(grid), 0.0};
  const CounterRng rng(spec.seed, 0x70657274ULL);
  const Vec3 dir = random_direction(rng);
  const Vec3 pot = random_direction(rng.substream(1));
  const double offset = 0.4 * grid.length();
  const Vec3 where{c[0] + offset * dir[0], c[1] + offset * dir[1], c[2] + offset * dir[2]};
  if (spec.perturbation_amplitude == 0.0) {
    out.v0 = out.u0;
    return out;
  }
  const VectorField pert = gaussian_curl(grid, where, spec.core_radius, pot,
                                         spec.perturbation_amplitude);
  out.v0 = out.u0 + pert;
  out.v0.mark_solenoidal(true);
  const VectorField diff = pert.to_physical();
  const int n = grid.n();
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2)
      for (int i3 = 0; i3 < n; ++i3) {
        const Vec3 x{grid.coordinate(i1), grid.coordinate(i2), grid.coordinate(i3)};
        if (norm(displacement(grid, x, c)) > spec.agreement_radius) continue;
        const std::size_t idx = grid.physical_index(i1, i2, i3);
        const double m = std::hypot(diff.physical(0)[idx], diff.physical(1)[idx], diff.physical(2)[idx]);
        out.leak = std::max(out.leak, m);
      }
  return out;
}

}  // namespace nslab::lab
