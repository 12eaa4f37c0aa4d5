// nslab command line: one scenario per invocation, or a batch of configs run
// on concurrent workers.

#include <CLI11.hpp>

#include <cstdint>
#include <exception>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "nslab/errors.hpp"
#include "nslab/lab/experiment.hpp"

namespace {

using namespace nslab::lab;

void print_summary(const Report& r, const std::string& where) {
  std::cout << r.scenario << " -> " << where << (r.passed() ? "  PASS" : "  FAIL") << "\n";
  if (r.error) std::cout << "  solver error: " << *r.error << "\n";
  for (const auto& rule : r.rules)
    std::cout << "  " << (rule.asserted ? (rule.passed ? "pass " : "FAIL ") : "info ") << rule.rule
              << " measured=" << rule.measured << " target=" << rule.target << " tol=" << rule.tolerance
              << (rule.status == "evaluated" ? "" : " [" + rule.status + "]") << "\n";
}

Report run_one(ExperimentConfig config, const std::string& out, std::optional<std::uint64_t> seed) {
  if (seed) {
    config.seed = *seed;
    config.datum.seed = *seed;
  }
  Report r = run_experiment(config);
  write_report(r, out);
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for weak-L^p Navier-Stokes decay experiments"};
  app.require_subcommand(1);
  std::string config_path, out_dir;
  std::optional<std::uint64_t> seed;
  std::vector<CLI::App*> scenario_commands;
  for (Scenario s : all_scenarios()) {
    CLI::App* sub = app.add_subcommand(cli_name(s), "run the " + cli_name(s) + " scenario");
    sub->add_option("--config", config_path, "experiment JSON")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory")->required();
    sub->add_option("--seed", seed, "override the configured seed");
    scenario_commands.push_back(sub);
  }
  std::vector<std::string> batch_configs;
  CLI::App* batch = app.add_subcommand("batch", "run several configs concurrently, one output subdirectory each");
  batch->add_option("--configs", batch_configs, "experiment JSON files")->required()->check(CLI::ExistingFile);
  batch->add_option("--out", out_dir, "parent output directory")->required();
  batch->add_option("--seed", seed, "override every configured seed");
  CLI11_PARSE(app, argc, argv);

  try {
    if (batch->parsed()) {
      std::vector<ExperimentConfig> configs;
      for (const auto& path : batch_configs) configs.push_back(load_config(path));
      std::vector<std::future<Report>> jobs;
      std::vector<std::string> dirs;
      for (std::size_t i = 0; i < configs.size(); ++i) {
        dirs.push_back(out_dir + "/" + std::to_string(i) + "_" + cli_name(configs[i].scenario));
        jobs.push_back(std::async(std::launch::async, run_one, configs[i], dirs.back(), seed));
      }
      bool ok = true;
      for (std::size_t i = 0; i < jobs.size(); ++i) {
        const Report r = jobs[i].get();
        print_summary(r, dirs[i]);
        ok = ok && r.passed();
      }
      return ok ? 0 : 1;
    }
    for (std::size_t i = 0; i < scenario_commands.size(); ++i) {
      if (!scenario_commands[i]->parsed()) continue;
      ExperimentConfig config = load_config(config_path);
      const Scenario wanted = all_scenarios()[i];
      if (config.scenario != wanted)
        throw nslab::InvalidArgument("config scenario '" + cli_name(config.scenario) + "' does not match '" +
                                     cli_name(wanted) + "'");
      const Report r = run_one(config, out_dir, seed);
      print_summary(r, out_dir);
      return r.passed() ? 0 : 1;
    }
  } catch (const nslab::InvalidArgument& e) {
    std::cerr << "nslab: invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "nslab: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
