#include "nslab/lab/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fftw3.h>

#include "nslab/errors.hpp"

namespace nslab::lab {

using nlohmann::json;

namespace {

/// NaN and infinities are not JSON numbers.
json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

json window_json(const analysis::FitWindow& w) { return {{"t_min", w.t_min}, {"t_max", w.t_max}}; }

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

bool Report::passed() const {
  if (error) return false;
  for (const auto& r : rules)
    if (r.asserted && !r.passed) return false;
  return true;
}

std::string version_string() { return std::string("nslab 0.1.0; ") + fftw_version; }

json to_json(const Report& report) {
  json j;
  j["scenario"] = report.scenario;
  j["config"] = report.config;
  j["versions"] = version_string();
  j["passed"] = report.passed();
  j["error"] = report.error ? json(*report.error) : json(nullptr);
  j["diagnostics"] = report.diagnostics;
  json fits = json::object();
  for (const auto& f : report.fits)
    fits[f.name] = {{"slope", number(f.fit.slope)},
                    {"intercept", number(f.fit.intercept)},
                    {"r_squared", number(f.fit.r_squared)},
                    {"n_points", f.fit.n_points},
                    {"window", window_json(f.fit.window)}};
  j["fits"] = fits;
  json rules = json::array();
  for (const auto& r : report.rules) {
    json x = {{"rule", r.rule},
              {"description", r.description},
              {"measured", number(r.measured)},
              {"target", number(r.target)},
              {"tolerance", number(r.tolerance)},
              {"asserted", r.asserted},
              {"passed", r.passed},
              {"status", r.status}};
    x["window"] = r.window ? window_json(*r.window) : json(nullptr);
    rules.push_back(x);
  }
  j["rules"] = rules;
  json ineq = json::object();
  for (const auto& s : report.inequalities) {
    json rows = json::array();
    for (std::size_t i = 0; i < s.t.size(); ++i)
      rows.push_back({{"t", number(s.t[i])}, {"lhs", number(s.lhs[i])}, {"rhs", number(s.rhs[i])}});
    ineq[s.name] = rows;
  }
  j["inequalities"] = ineq;
  json series = json::object();
  for (const auto& s : report.series) {
    json rows = json::array();
    for (const auto& p : s.points) rows.push_back({number(p.t), number(p.value)});
    series[s.name] = rows;
  }
  j["series"] = series;
  return j;
}

std::string series_to_csv(const analysis::Series& series) {
  std::string out = "t,value\n";
  char buf[96];
  for (const auto& p : series) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", p.t, p.value);
    out += buf;
  }
  return out;
}

analysis::Series parse_series_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  require(static_cast<bool>(std::getline(in, line)) && line == "t,value", "series CSV needs a t,value header");
  analysis::Series out;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    require(comma != std::string::npos, "missing comma on line " + std::to_string(lineno));
    const std::string a = line.substr(0, comma), b = line.substr(comma + 1);
    char* end = nullptr;
    const double t = std::strtod(a.c_str(), &end);
    require(!a.empty() && *end == '\0', "bad time on line " + std::to_string(lineno));
    const double v = std::strtod(b.c_str(), &end);
    require(!b.empty() && *end == '\0', "bad value on line " + std::to_string(lineno));
    out.push_back({t, v});
  }
  return out;
}

void write_report(const Report& report, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create " + out_dir.string() + ": " + ec.message());
  write_text(out_dir / "report.json", to_json(report).dump(2) + "\n");
  const json timing = {{"wall_clock_seconds", report.wall_clock_seconds}};
  write_text(out_dir / "timing.json", timing.dump(2) + "\n");
  for (const auto& s : report.series) write_text(out_dir / ("series_" + s.name + ".csv"), series_to_csv(s.points));
}

}  // namespace nslab::lab
