#pragma once
/// @file config.hpp
/// Experiment configuration and its JSON form.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nslab/analysis/fitting.hpp"
#include "nslab/lab/datum.hpp"

namespace nslab::lab {

enum class Scenario {
  decay_rate,
  long_time,
  spacetime,
  expansion,
  separation_data,
  heat_lemma,
  splitting_bound,
  oseen_bound,
  lei_residual,
  time_holder
};

/// CLI spelling, e.g. "heat-lemma".
std::string cli_name(Scenario s);
/// Accepts the CLI spelling or the underscore form ("heat_lemma").
Scenario scenario_from_string(const std::string& name);
std::vector<Scenario> all_scenarios();

enum class Spacing { log, uniform };

struct Schedule {
  double t_min = 1e-4;
  double t_max = 1e-2;
  int count = 21;
  Spacing spacing = Spacing::log;
  /// Log spacing needs t_min > 0; uniform spacing may start at 0.
  std::vector<double> times() const;
};

struct ExponentParams {
  double p = 3.0;
  double q = 2.0;
  double alpha = 4.0;
  std::optional<double> delta;  ///< defaults to sigma(p) / 10
};

struct Tolerances {
  double decay = 0.10;
  double spacetime = 0.10;
  double expansion = 0.15;
  double separation = 0.15;
  double heat_lemma = 1e-12;
  double lei = 1e-5;
  double oseen_spread = 3.0;
  double leak = 1e-8;  ///< relative to the datum amplitude
};

struct SolverParams {
  double dt = 1e-4;
  double cfl = 0.4;
};

/// Balls are centred at the box centre.
struct Geometry {
  double omega_radius = 0.25;  ///< B_Omega, where sup norms are taken
  double cutoff_inner = 0.5;   ///< chi = 1 inside
  double cutoff_outer = 1.0;   ///< chi = 0 outside
};

struct EnergyParams {
  std::optional<double> c_l;    ///< calibrated on the grid when absent
  int calibration_samples = 24;
};

struct ExperimentConfig {
  Scenario scenario = Scenario::decay_rate;
  int n = 32;
  double length = 6.283185307179586;
  DatumSpec datum;
  Schedule schedule;
  analysis::FitWindow fit_window{1e-3, 1e-2};
  ExponentParams exponents;
  Tolerances tolerances;
  SolverParams solver;
  Geometry geometry;
  EnergyParams energy;
  int samples = 0;  ///< heat_lemma: extra random fields
  std::string output_dir = "out";
  std::uint64_t seed = 0;

  double delta() const;
};

/// Throws InvalidArgument on any violated invariant.
void validate(const ExperimentConfig& config);

/// Unknown keys anywhere are rejected with InvalidArgument.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& config);
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace nslab::lab
