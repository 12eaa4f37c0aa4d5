#pragma once
/// @file report.hpp
/// Experiment reports and their on-disk form.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nslab/analysis/fitting.hpp"

namespace nslab::lab {

/// One evaluated acceptance rule. Rules with asserted == false are diagnostics
/// and never decide the outcome.
struct RuleRecord {
  std::string rule;
  std::string description;
  double measured = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  std::optional<analysis::FitWindow> window;
  bool asserted = true;
  bool passed = false;
  std::string status = "evaluated";  ///< or "degenerate", "error"
};

struct NamedSeries {
  std::string name;
  analysis::Series points;
};

struct NamedFit {
  std::string name;
  analysis::RateFit fit;
};

struct InequalitySeries {
  std::string name;
  std::vector<double> t, lhs, rhs;
};

struct Report {
  std::string scenario;
  nlohmann::json config;
  std::vector<NamedFit> fits;
  std::vector<NamedSeries> series;
  std::vector<InequalitySeries> inequalities;
  std::vector<RuleRecord> rules;
  nlohmann::json diagnostics = nlohmann::json::object();
  std::optional<std::string> error;  ///< solver abort message
  double wall_clock_seconds = 0.0;   ///< written to timing.json only

  /// True iff there is no error and every asserted rule passed.
  bool passed() const;
};

std::string version_string();

/// Everything except wall-clock time, with sorted keys.
nlohmann::json to_json(const Report& report);

/// Writes report.json, timing.json and series_<name>.csv (t,value at 17
/// significant digits). Throws std::runtime_error with the offending path.
void write_report(const Report& report, const std::filesystem::path& out_dir);

std::string series_to_csv(const analysis::Series& series);
/// Inverse of series_to_csv; throws InvalidArgument on malformed input.
analysis::Series parse_series_csv(const std::string& text);

}  // namespace nslab::lab
