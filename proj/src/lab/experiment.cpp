#include "nslab/lab/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

#include "nslab/analysis/exponents.hpp"
#include "nslab/analysis/norms.hpp"
#include "nslab/calderon/splitting.hpp"
#include "nslab/errors.hpp"
#include "nslab/evolution/duhamel.hpp"
#include "nslab/evolution/energy.hpp"
#include "nslab/evolution/navier_stokes.hpp"
#include "nslab/evolution/oseen_kernel.hpp"
#include "nslab/random.hpp"
#include "nslab/spectral/operators.hpp"

namespace nslab::lab {

using analysis::FitWindow;
using analysis::Series;
using evolution::Trajectory;
using nlohmann::json;
using spectral::Grid3;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

evolution::NsOptions solver_options(const ExperimentConfig& c) {
  evolution::NsOptions o;
  o.dt = c.solver.dt;
  o.cfl = c.solver.cfl;
  return o;
}

std::array<double, 3> centre(const Grid3& g) {
  const double c = 0.5 * g.length();
  return {c, c, c};
}

/// Requires a uniform schedule that starts at t = 0.
std::vector<double> times_from_zero(const ExperimentConfig& c, const char* scenario) {
  require(c.schedule.spacing == Spacing::uniform && c.schedule.t_min == 0.0,
          std::string(scenario) + " needs a uniform schedule starting at t = 0");
  return c.schedule.times();
}

/// Fewer than three points in the window, or any nonpositive or nonfinite value.
bool degenerate(const Series& s, const FitWindow& w) {
  int count = 0;
  for (const auto& p : s) {
    if (!w.contains(p.t)) continue;
    if (!(p.value > 0.0) || !std::isfinite(p.value)) return true;
    ++count;
  }
  return count < 3;
}

/// Fits `s` on `w` and records a lower-bound rule slope >= target - tol.
void fit_rule(Report& report, const std::string& name, const std::string& description,
              const Series& s, const FitWindow& w, double target, double tol, bool asserted = true) {
  RuleRecord r;
  r.rule = name;
  r.description = description;
  r.target = target;
  r.tolerance = tol;
  r.window = w;
  r.asserted = asserted;
  if (degenerate(s, w)) {
    r.status = "degenerate";
    r.measured = kNaN;
    r.passed = false;
  } else {
    const analysis::RateFit fit = analysis::rate_fit(s, w);
    report.fits.push_back({name, fit});
    r.measured = fit.slope;
    r.passed = fit.slope >= target - tol;
  }
  report.rules.push_back(r);
}

void upper_rule(Report& report, const std::string& name, const std::string& description, double measured,
                double target, double tol) {
  RuleRecord r;
  r.rule = name;
  r.description = description;
  r.measured = measured;
  r.target = target;
  r.tolerance = tol;
  r.passed = std::isfinite(measured) && measured <= target + tol;
  report.rules.push_back(r);
}

Series difference_series(const Trajectory& a, const Trajectory& b,
                         const std::function<double(const VectorField&)>& measure, bool skip_zero = true) {
  Series s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (skip_zero && a.time(i) == 0.0) continue;
    s.push_back({a.time(i), measure(a.at(i) - b.at(i))});
  }
  return s;
}

// --------------------------------------------------------------------------
// scenarios

void decay_like(const ExperimentConfig& c, Report& report, bool long_time) {
  const Grid3 g(c.n, c.length);
  const auto times = c.schedule.times();
  const VectorField u0 = make_datum(c.datum, g);
  const double sigma = analysis::sigma_exponents(c.exponents.p).sigma;
  report.diagnostics["sigma"] = sigma;
  report.diagnostics["datum_weak_norm"] = analysis::weak_lp_norm(u0, c.exponents.p);
  const Trajectory ns = evolution::evolve_ns(u0, times, solver_options(c));
  const Trajectory heat = evolution::evolve_heat(u0, times);
  const Series e = difference_series(ns, heat, [](const VectorField& d) { return evolution::energy(d); });
  report.series.push_back({"error_energy", e});
  if (long_time) {
    const double target = analysis::sigma_exponents(c.exponents.p).long_time;
    fit_rule(report, "long_time_exponent", "late-window slope of ||u - P0||_2^2, report only", e,
             c.fit_window, target, c.tolerances.decay, false);
  } else {
    fit_rule(report, "decay_exponent", "slope of ||u - P0||_2^2 is at least sigma(p) - tol", e,
             c.fit_window, sigma, c.tolerances.decay);
  }
}

void spacetime(const ExperimentConfig& c, Report& report) {
  const Grid3 g(c.n, c.length);
  const auto times = times_from_zero(c, "spacetime");
  const VectorField u0 = make_datum(c.datum, g);
  const double sigma = analysis::sigma_exponents(c.exponents.p).sigma;
  const double q = c.exponents.q, r = analysis::spacetime_index(q);
  report.diagnostics["r"] = r;
  const Trajectory ns = evolution::evolve_ns(u0, times, solver_options(c));
  const Trajectory heat = evolution::evolve_heat(u0, times);
  std::vector<double> norms;
  for (std::size_t i = 0; i < ns.size(); ++i) norms.push_back(analysis::lp_norm(ns.at(i) - heat.at(i), q));
  Series s;
  for (std::size_t i = 2; i < times.size(); ++i)
    s.push_back({times[i], analysis::spacetime_norm_from_values(std::span(times).first(i + 1),
                                                                std::span<const double>(norms).first(i + 1), r)});
  report.series.push_back({"spacetime_norm", s});
  fit_rule(report, "spacetime_exponent", "slope of ||u - P0||_{L^r_t L^q_x}(0,T) in T is at least sigma(p) - tol",
           s, c.fit_window, sigma, c.tolerances.spacetime);
}

void expansion(const ExperimentConfig& c, Report& report) {
  const Grid3 g(c.n, c.length);
  const auto times = times_from_zero(c, "expansion");
  const VectorField u0 = make_datum(c.datum, g);
  const double sigma = analysis::sigma_exponents(c.exponents.p).sigma;
  const double delta = c.delta();
  const auto ctr = centre(g);
  const spectral::ScalarField chi =
      evolution::radial_cutoff(g, ctr, c.geometry.cutoff_inner, c.geometry.cutoff_outer);
  const evolution::CutoffGeometry geom{ctr, c.geometry.omega_radius, c.geometry.cutoff_outer};
  const evolution::ExpansionTerms terms = evolution::expansion_terms(u0, chi, times, geom);
  const Trajectory ns = evolution::evolve_ns(u0, times, solver_options(c));
  const double omega = c.geometry.omega_radius;
  const auto sup = [omega](const VectorField& d) { return ball_sup(d, omega); };
  const Series s = difference_series(ns, terms.p_omega, sup);
  report.series.push_back({"expansion_residual", s});
  report.series.push_back({"first_order_residual", difference_series(ns, terms.p1, sup)});
  report.diagnostics["sigma"] = sigma;
  report.diagnostics["delta"] = delta;
  fit_rule(report, "expansion_exponent", "slope of sup_{B_Omega} |u - P_Omega| is at least 1 + sigma - delta - tol",
           s, c.fit_window, 1.0 + sigma - delta, c.tolerances.expansion);
}

void separation(const ExperimentConfig& c, Report& report) {
  require(c.datum.kind == DatumKind::pair_agreeing_locally, "separation needs pair_agreeing_locally data");
  const Grid3 g(c.n, c.length);
  const auto times = c.schedule.times();
  const DatumPair pair = make_datum_pair(c.datum, g);
  upper_rule(report, "agreement_leak", "max |u0 - v0| in the agreement ball relative to the amplitude",
             pair.leak / c.datum.amplitude, 0.0, c.tolerances.leak);
  const Trajectory u = evolution::evolve_ns(pair.u0, times, solver_options(c));
  const Trajectory v = evolution::evolve_ns(pair.v0, times, solver_options(c));
  const double omega = c.geometry.omega_radius;
  const Series s = difference_series(u, v, [omega](const VectorField& d) { return ball_sup(d, omega); });
  report.series.push_back({"separation", s});
  report.diagnostics["leak"] = pair.leak;
  fit_rule(report, "separation_exponent", "slope of sup_{B_Omega} |u - v| is at least 1 - tol", s, c.fit_window,
           1.0, c.tolerances.separation);
}

void heat_lemma(const ExperimentConfig& c, Report& report) {
  const Grid3 g(c.n, c.length);
  const auto times = c.schedule.times();
  const double s = 1.5 - 3.0 / c.exponents.p;
  std::vector<VectorField> fields{make_datum(c.datum, g)};
  for (int i = 0; i < c.samples; ++i) fields.push_back(random_mean_free_field(g, c.seed, static_cast<std::uint64_t>(i)));
  Series worst;
  double max_ratio = 0.0;
  for (double t : times) {
    if (t == 0.0) continue;
    double m = 0.0;
    for (const auto& f : fields) {
      const double denom = std::pow(t, 0.5 * s) * analysis::sobolev_seminorm(f, s);
      if (denom == 0.0) continue;
      const double num = std::sqrt(evolution::energy(spectral::heat_semigroup(f, t) - f));
      m = std::max(m, num / denom);
    }
    worst.push_back({t, m});
    max_ratio = std::max(max_ratio, m);
  }
  report.series.push_back({"heat_lemma_ratio", worst});
  report.diagnostics["s"] = s;
  report.diagnostics["fields"] = fields.size();
  upper_rule(report, "heat_lemma_ratio", "||e^{t Delta} f - f||_2 / (t^{s/2} ||Lambda^s f||_2) <= 1", max_ratio,
             1.0, c.tolerances.heat_lemma);
}

void splitting(const ExperimentConfig& c, Report& report) {
  const Grid3 g(c.n, c.length);
  const auto times = times_from_zero(c, "splitting");
  const VectorField u0 = make_datum(c.datum, g);
  const double p = c.exponents.p, alpha = c.exponents.alpha;
  const double norm = analysis::weak_lp_norm(u0, p);
  const double T = c.schedule.t_max;
  const double N = calderon::optimal_threshold(p, alpha, T, norm);
  const calderon::SplitPair split = calderon::lorentz_split(u0, N, alpha);
  const double c_l = c.energy.c_l ? *c.energy.c_l
                                  : evolution::calibrate_ladyzhenskaya(g, c.energy.calibration_samples, c.seed);
  const Trajectory ns = evolution::evolve_ns(u0, times, solver_options(c));
  const Trajectory v = evolution::evolve_heat(split.u_bar, times);
  const auto check = evolution::perturbed_energy_check(ns, v, c_l);
  InequalitySeries ineq{"perturbed_energy", check.ledger.times, check.lhs, check.rhs};
  report.inequalities.push_back(ineq);
  // lhs == rhs at t = 0 by construction
  double worst = 0.0;
  for (std::size_t i = 1; i < check.lhs.size(); ++i)
    worst = std::max(worst, check.rhs[i] > 0.0 ? check.lhs[i] / check.rhs[i] : (check.lhs[i] > 0.0 ? INFINITY : 0.0));
  // bracket of the a priori bound with unit constants
  Series bracket;
  for (double t : times) {
    if (t == 0.0) continue;
    bracket.push_back({t, std::pow(norm, p) * std::pow(N, 2.0 - p) +
                              std::pow(norm, 4.0 * p / alpha) * std::pow(N, 4.0 * (alpha - p) / alpha) *
                                  std::pow(t, (5.0 * alpha - 12.0) / (2.0 * alpha))});
  }
  report.series.push_back({"bound_bracket", bracket});
  report.diagnostics["threshold"] = N;
  report.diagnostics["weak_norm"] = norm;
  report.diagnostics["C_L"] = c_l;
  report.diagnostics["tilde_l2_norm"] = split.tilde_l2_norm;
  report.diagnostics["bar_alpha_norm"] = split.bar_alpha_norm;
  report.diagnostics["projection_factor"] = split.projection_factor;
  upper_rule(report, "perturbed_energy", "max over output times t > 0 of lhs / rhs of the perturbed energy estimate",
             worst, 1.0, 0.0);
}

void oseen(const ExperimentConfig& c, Report& report) {
  const Grid3 g(c.n, c.length);
  const auto times = c.schedule.times();
  std::vector<std::array<double, 3>> points;
  const std::array<std::array<double, 3>, 3> dirs{{{1.0, 0.0, 0.0},
                                                   {std::sqrt(0.5), std::sqrt(0.5), 0.0},
                                                   {1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0)}}};
  const double r_max = 0.25 * c.length;
  for (double frac : {0.0, 0.125, 0.25, 0.5, 0.75, 1.0})
    for (const auto& d : dirs) {
      points.push_back({frac * r_max * d[0], frac * r_max * d[1], frac * r_max * d[2]});
      if (frac == 0.0) break;
    }
  const auto samples = evolution::oseen_kernel_check(g, times, points);
  double global_max = 0.0, global_min = INFINITY, per_point = 0.0;
  const std::size_t nt = times.size();
  Series spread;
  for (std::size_t j = 0; j < points.size(); ++j) {
    double mx = 0.0, mn = INFINITY;
    for (std::size_t i = 0; i < nt; ++i) {
      // samples are ordered time-major
      const double r = samples[i * points.size() + j].ratio;
      mx = std::max(mx, r);
      mn = std::min(mn, r);
    }
    const auto& x = samples[j].x;
    spread.push_back({std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]), mx / mn});
    per_point = std::max(per_point, mx / mn);
    global_max = std::max(global_max, mx);
    global_min = std::min(global_min, mn);
  }
  report.series.push_back({"ratio_spread_by_radius", spread});
  report.diagnostics["global_ratio_max"] = global_max;
  report.diagnostics["global_ratio_min"] = global_min;
  upper_rule(report, "oseen_spread", "max over sample points of max_t / min_t of |S|(|x| + sqrt t)^3", per_point,
             c.tolerances.oseen_spread, 0.0);
  RuleRecord r;
  r.rule = "oseen_spread_joint";
  r.description = "max / min of |S|(|x| + sqrt t)^3 jointly over points and times, report only";
  r.measured = global_max / global_min;
  r.target = c.tolerances.oseen_spread;
  r.asserted = false;
  r.passed = r.measured <= r.target;
  report.rules.push_back(r);
}

void lei(const ExperimentConfig& c, Report& report) {
  const Grid3 g(c.n, c.length);
  const auto times = times_from_zero(c, "lei");
  const VectorField u0 = make_datum(c.datum, g);
  const Trajectory ns = evolution::evolve_ns(u0, times, solver_options(c));
  const double scale = evolution::energy(u0);
  const double T = c.schedule.t_max;
  const double t_on = 0.1 * T, ramp = 0.5 * T;
  const CounterRng rng(c.seed, 0x6c6569ULL);
  std::vector<evolution::Point> centres{centre(g)};
  for (std::uint64_t k = 0; k < 3; ++k)
    centres.push_back({rng.uniform(3 * k, 0.0, c.length), rng.uniform(3 * k + 1, 0.0, c.length),
                       rng.uniform(3 * k + 2, 0.0, c.length)});
  const int m_max = std::max(1, c.n / 6);
  std::vector<evolution::TestFunction> family;
  for (int m : {m_max, std::max(1, m_max / 2)})
    for (const auto& x : centres) family.push_back(evolution::bump_test_function(g, x, m, t_on, ramp));
  std::vector<double> check_times;
  for (double t : times)
    if (t > t_on) check_times.push_back(t);
  const auto residuals = evolution::local_energy_residuals(ns, family, check_times);
  double worst = 0.0;
  Series first;
  for (std::size_t f = 0; f < residuals.size(); ++f)
    for (std::size_t k = 0; k < check_times.size(); ++k) {
      const double rel = std::abs(residuals[f][k]) / scale;
      worst = std::max(worst, rel);
      if (f == 0) first.push_back({check_times[k], rel});
    }
  report.series.push_back({"relative_residual", first});
  report.diagnostics["test_functions"] = family.size();
  report.diagnostics["energy_scale"] = scale;
  upper_rule(report, "lei_residual", "max |LHS - RHS| of the local energy balance over the energy scale", worst,
             0.0, c.tolerances.lei);
}

void time_holder(const ExperimentConfig& c, Report& report) {
  const Grid3 g(c.n, c.length);
  const auto times = times_from_zero(c, "time_holder");
  const VectorField u0 = make_datum(c.datum, g);
  const Trajectory ns = evolution::evolve_ns(u0, times, solver_options(c));
  const int n = g.n();
  const CounterRng rng(c.seed, 0x686f6cULL);
  std::vector<std::size_t> nodes{g.physical_index(n / 2, n / 2, n / 2)};
  for (std::uint64_t k = 0; k < 3; ++k)
    nodes.push_back(g.physical_index(static_cast<int>(rng.bits(3 * k) % n), static_cast<int>(rng.bits(3 * k + 1) % n),
                                     static_cast<int>(rng.bits(3 * k + 2) % n)));
  const double dt = times[1] - times[0];
  // central differences at interior schedule points
  std::vector<std::vector<double>> du;
  for (std::size_t i = 1; i + 1 < ns.size(); ++i) {
    const VectorField a = ns.at(i - 1).to_physical(), b = ns.at(i + 1).to_physical();
    std::vector<double> row;
    for (std::size_t idx : nodes)
      for (int comp = 0; comp < 3; ++comp) row.push_back((b.physical(comp)[idx] - a.physical(comp)[idx]) / (2.0 * dt));
    du.push_back(row);
  }
  Series modulus;
  const std::size_t lags = du.size() / 2;
  for (std::size_t k = 1; k <= lags; ++k) {
    double w = 0.0;
    for (std::size_t i = 0; i + k < du.size(); ++i)
      for (std::size_t j = 0; j < du[i].size(); ++j) w = std::max(w, std::abs(du[i + k][j] - du[i][j]));
    modulus.push_back({static_cast<double>(k) * dt, w});
  }
  report.series.push_back({"modulus_of_continuity", modulus});
  const FitWindow w{modulus.empty() ? 0.0 : modulus.front().t, modulus.empty() ? 0.0 : modulus.back().t};
  fit_rule(report, "holder_exponent", "Hoelder exponent of the modulus of continuity of d_t u, diagnostic only",
           modulus, w, kNaN, kNaN, false);
}

}  // namespace

double ball_sup(const VectorField& field, double radius) {
  const VectorField f = field.to_physical();
  const Grid3& g = f.grid();
  const auto ctr = centre(g);
  const int n = g.n();
  double out = 0.0;
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2)
      for (int i3 = 0; i3 < n; ++i3) {
        if (evolution::periodic_distance(g, {g.coordinate(i1), g.coordinate(i2), g.coordinate(i3)}, ctr) > radius)
          continue;
        const std::size_t idx = g.physical_index(i1, i2, i3);
        out = std::max(out, std::hypot(f.physical(0)[idx], f.physical(1)[idx], f.physical(2)[idx]));
      }
  return out;
}

Report run_experiment(const ExperimentConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  Report report;
  report.scenario = cli_name(config.scenario);
  report.config = to_json(config);
  try {
    switch (config.scenario) {
      case Scenario::decay_rate: decay_like(config, report, false); break;
      case Scenario::long_time: decay_like(config, report, true); break;
      case Scenario::spacetime: spacetime(config, report); break;
      case Scenario::expansion: expansion(config, report); break;
      case Scenario::separation_data: separation(config, report); break;
      case Scenario::heat_lemma: heat_lemma(config, report); break;
      case Scenario::splitting_bound: splitting(config, report); break;
      case Scenario::oseen_bound: oseen(config, report); break;
      case Scenario::lei_residual: lei(config, report); break;
      case Scenario::time_holder: time_holder(config, report); break;
    }
  } catch (const SolverError& e) {
    report.error = e.what();
    RuleRecord r;
    r.rule = "solver";
    r.description = "time integration completed without CFL or blow-up abort";
    r.measured = kNaN;
    r.status = "error";
    r.passed = false;
    report.rules.push_back(r);
  }
  report.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace nslab::lab
