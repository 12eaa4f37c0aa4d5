#include "nslab/lab/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "nslab/analysis/exponents.hpp"
#include "nslab/errors.hpp"

namespace nslab::lab {

using nlohmann::json;

namespace {

struct ScenarioName {
  Scenario scenario;
  const char* cli;
  const char* tag;
};

constexpr ScenarioName kNames[] = {
    {Scenario::decay_rate, "decay", "decay_rate"},
    {Scenario::long_time, "long-time", "long_time"},
    {Scenario::spacetime, "spacetime", "spacetime"},
    {Scenario::expansion, "expansion", "expansion"},
    {Scenario::separation_data, "separation", "separation_data"},
    {Scenario::heat_lemma, "heat-lemma", "heat_lemma"},
    {Scenario::splitting_bound, "splitting", "splitting_bound"},
    {Scenario::oseen_bound, "oseen", "oseen_bound"},
    {Scenario::lei_residual, "lei", "lei_residual"},
    {Scenario::time_holder, "time-holder", "time_holder"},
};

void reject_unknown(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  require(j.is_object(), where + " must be a JSON object");
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& item : j.items())
    require(keys.count(item.key()) == 1, "unknown key '" + item.key() + "' in " + where);
}

template <class T>
void read(const json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InvalidArgument(where + "." + key + ": " + e.what());
  }
}

}  // namespace

std::string cli_name(Scenario s) {
  for (const auto& n : kNames)
    if (n.scenario == s) return n.cli;
  return "unknown";
}

Scenario scenario_from_string(const std::string& name) {
  for (const auto& n : kNames)
    if (name == n.cli || name == n.tag) return n.scenario;
  throw InvalidArgument("unknown scenario '" + name + "'");
}

std::vector<Scenario> all_scenarios() {
  std::vector<Scenario> out;
  for (const auto& n : kNames) out.push_back(n.scenario);
  return out;
}

std::vector<double> Schedule::times() const {
  require(count >= 2, "schedule needs at least two times");
  require(t_max > t_min && t_min >= 0.0 && std::isfinite(t_max), "schedule needs 0 <= t_min < t_max");
  std::vector<double> t(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double s = static_cast<double>(i) / (count - 1);
    if (spacing == Spacing::log) {
      require(t_min > 0.0, "log spacing needs t_min > 0");
      t[i] = t_min * std::pow(t_max / t_min, s);
    } else {
      t[i] = t_min + (t_max - t_min) * s;
    }
  }
  t.front() = t_min;
  t.back() = t_max;
  return t;
}

double ExperimentConfig::delta() const {
  if (exponents.delta) return *exponents.delta;
  return analysis::sigma_exponents(exponents.p).sigma / 10.0;
}

void validate(const ExperimentConfig& c) {
  const spectral::Grid3 grid(c.n, c.length);
  validate(c.datum, grid);
  const auto times = c.schedule.times();
  require(std::sqrt(c.schedule.t_max) <= c.length / 8.0 * (1.0 + 1e-12), "sqrt(t_max) must not exceed L/8");
  require(c.fit_window.t_min < c.fit_window.t_max, "fit window must be nonempty");
  require(c.fit_window.t_min >= c.schedule.t_min * (1.0 - 1e-12) &&
              c.fit_window.t_max <= c.schedule.t_max * (1.0 + 1e-12),
          "fit window must lie inside the schedule range");
  const double sigma = analysis::sigma_exponents(c.exponents.p).sigma;
  const double d = c.delta();
  require(d > 0.0 && d < sigma, "delta must lie in (0, sigma(p))");
  require(c.exponents.alpha > 3.0 && c.exponents.alpha <= 4.0, "alpha must lie in (3, 4]");
  require(c.exponents.q > 1.5 && c.exponents.q < 3.0, "q must lie in (3/2, 3)");
  require(c.solver.dt > 0.0 && c.solver.cfl > 0.0, "solver dt and cfl must be positive");
  require(c.geometry.omega_radius > 0.0 && c.geometry.omega_radius < c.geometry.cutoff_inner &&
              c.geometry.cutoff_inner < c.geometry.cutoff_outer &&
              c.geometry.cutoff_outer < 0.5 * c.length,
          "geometry needs 0 < omega < cutoff_inner < cutoff_outer < L/2");
  require(c.energy.calibration_samples >= 1, "calibration needs at least one sample");
  require(!c.energy.c_l || *c.energy.c_l > 0.0, "C_L must be positive");
  require(c.samples >= 0, "samples must be nonnegative");
}

ExperimentConfig config_from_json(const json& j) {
  reject_unknown(j, {"scenario", "grid", "datum", "schedule", "fit_window", "exponents", "tolerances",
                     "solver", "geometry", "energy", "samples", "output_dir", "seed"},
                 "config");
  ExperimentConfig c;
  std::string scenario = cli_name(c.scenario);
  read(j, "scenario", scenario, "config");
  c.scenario = scenario_from_string(scenario);
  read(j, "samples", c.samples, "config");
  read(j, "output_dir", c.output_dir, "config");
  read(j, "seed", c.seed, "config");
  if (j.contains("grid")) {
    const json& g = j.at("grid");
    reject_unknown(g, {"n", "L"}, "grid");
    read(g, "n", c.n, "grid");
    read(g, "L", c.length, "grid");
  }
  if (j.contains("exponents")) {
    const json& e = j.at("exponents");
    reject_unknown(e, {"p", "q", "alpha", "delta"}, "exponents");
    read(e, "p", c.exponents.p, "exponents");
    read(e, "q", c.exponents.q, "exponents");
    read(e, "alpha", c.exponents.alpha, "exponents");
    if (e.contains("delta") && !e.at("delta").is_null()) {
      double d = 0.0;
      read(e, "delta", d, "exponents");
      c.exponents.delta = d;
    }
  }
  c.datum.p = c.exponents.p;
  if (j.contains("datum")) {
    const json& d = j.at("datum");
    reject_unknown(d, {"kind", "p", "core_radius", "envelope_radius", "agreement_radius", "amplitude",
                       "perturbation_amplitude"},
                   "datum");
    std::string kind = to_string(c.datum.kind);
    read(d, "kind", kind, "datum");
    c.datum.kind = datum_kind_from_string(kind);
    read(d, "p", c.datum.p, "datum");
    read(d, "core_radius", c.datum.core_radius, "datum");
    read(d, "envelope_radius", c.datum.envelope_radius, "datum");
    read(d, "agreement_radius", c.datum.agreement_radius, "datum");
    read(d, "amplitude", c.datum.amplitude, "datum");
    read(d, "perturbation_amplitude", c.datum.perturbation_amplitude, "datum");
  }
  c.datum.seed = c.seed;
  if (j.contains("schedule")) {
    const json& s = j.at("schedule");
    reject_unknown(s, {"t_min", "t_max", "count", "spacing"}, "schedule");
    read(s, "t_min", c.schedule.t_min, "schedule");
    read(s, "t_max", c.schedule.t_max, "schedule");
    read(s, "count", c.schedule.count, "schedule");
    std::string spacing = "log";
    read(s, "spacing", spacing, "schedule");
    require(spacing == "log" || spacing == "uniform", "schedule.spacing must be 'log' or 'uniform'");
    c.schedule.spacing = spacing == "log" ? Spacing::log : Spacing::uniform;
  }
  if (j.contains("fit_window")) {
    const json& w = j.at("fit_window");
    reject_unknown(w, {"t_min", "t_max"}, "fit_window");
    read(w, "t_min", c.fit_window.t_min, "fit_window");
    read(w, "t_max", c.fit_window.t_max, "fit_window");
  }
  if (j.contains("tolerances")) {
    const json& t = j.at("tolerances");
    reject_unknown(t, {"decay", "spacetime", "expansion", "separation", "heat_lemma", "lei",
                       "oseen_spread", "leak"},
                   "tolerances");
    read(t, "decay", c.tolerances.decay, "tolerances");
    read(t, "spacetime", c.tolerances.spacetime, "tolerances");
    read(t, "expansion", c.tolerances.expansion, "tolerances");
    read(t, "separation", c.tolerances.separation, "tolerances");
    read(t, "heat_lemma", c.tolerances.heat_lemma, "tolerances");
    read(t, "lei", c.tolerances.lei, "tolerances");
    read(t, "oseen_spread", c.tolerances.oseen_spread, "tolerances");
    read(t, "leak", c.tolerances.leak, "tolerances");
  }
  if (j.contains("solver")) {
    const json& s = j.at("solver");
    reject_unknown(s, {"dt", "cfl"}, "solver");
    read(s, "dt", c.solver.dt, "solver");
    read(s, "cfl", c.solver.cfl, "solver");
  }
  if (j.contains("geometry")) {
    const json& g = j.at("geometry");
    reject_unknown(g, {"omega_radius", "cutoff_inner", "cutoff_outer"}, "geometry");
    read(g, "omega_radius", c.geometry.omega_radius, "geometry");
    read(g, "cutoff_inner", c.geometry.cutoff_inner, "geometry");
    read(g, "cutoff_outer", c.geometry.cutoff_outer, "geometry");
  }
  if (j.contains("energy")) {
    const json& e = j.at("energy");
    reject_unknown(e, {"C_L", "calibration_samples"}, "energy");
    if (e.contains("C_L") && !e.at("C_L").is_null()) {
      double v = 0.0;
      read(e, "C_L", v, "energy");
      c.energy.c_l = v;
    }
    read(e, "calibration_samples", c.energy.calibration_samples, "energy");
  }
  validate(c);
  return c;
}

json to_json(const ExperimentConfig& c) {
  json j;
  j["scenario"] = cli_name(c.scenario);
  j["grid"] = {{"n", c.n}, {"L", c.length}};
  j["datum"] = {{"kind", to_string(c.datum.kind)},
                {"p", c.datum.p},
                {"core_radius", c.datum.core_radius},
                {"envelope_radius", c.datum.envelope_radius},
                {"agreement_radius", c.datum.agreement_radius},
                {"amplitude", c.datum.amplitude},
                {"perturbation_amplitude", c.datum.perturbation_amplitude}};
  j["schedule"] = {{"t_min", c.schedule.t_min},
                   {"t_max", c.schedule.t_max},
                   {"count", c.schedule.count},
                   {"spacing", c.schedule.spacing == Spacing::log ? "log" : "uniform"}};
  j["fit_window"] = {{"t_min", c.fit_window.t_min}, {"t_max", c.fit_window.t_max}};
  j["exponents"] = {{"p", c.exponents.p}, {"q", c.exponents.q}, {"alpha", c.exponents.alpha},
                    {"delta", c.delta()}};
  j["tolerances"] = {{"decay", c.tolerances.decay},         {"spacetime", c.tolerances.spacetime},
                     {"expansion", c.tolerances.expansion}, {"separation", c.tolerances.separation},
                     {"heat_lemma", c.tolerances.heat_lemma}, {"lei", c.tolerances.lei},
                     {"oseen_spread", c.tolerances.oseen_spread}, {"leak", c.tolerances.leak}};
  j["solver"] = {{"dt", c.solver.dt}, {"cfl", c.solver.cfl}};
  j["geometry"] = {{"omega_radius", c.geometry.omega_radius},
                   {"cutoff_inner", c.geometry.cutoff_inner},
                   {"cutoff_outer", c.geometry.cutoff_outer}};
  j["energy"] = {{"C_L", c.energy.c_l ? json(*c.energy.c_l) : json(nullptr)},
                 {"calibration_samples", c.energy.calibration_samples}};
  j["samples"] = c.samples;
  j["output_dir"] = c.output_dir;
  j["seed"] = c.seed;
  return j;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidArgument("malformed JSON in " + path.string() + ": " + e.what());
  }
  try {
    return config_from_json(j);
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(path.string() + ": " + e.what());
  }
}

}  // namespace nslab::lab
