#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tla/io.hpp"
#include "tla/params.hpp"
#include "tla/spectrum.hpp"

namespace tla {

struct EpsRange {
  double a = 0.0, b = 0.0, step = 0.0;
  std::vector<double> values() const;
};

struct RunConfig {
  // reduced (epsilon with gamma or alpha) or physical (omega0, omega, rabi)
  std::optional<double> gamma, epsilon, alpha;
  std::optional<double> omega0, omega, rabi;
  int nodes_per_period = 2048;
  int periods = 64;             // projection window
  int samples_per_period = 512; // projection sampling
  double tol = 1e-12;
  int jmax = 24;
  std::set<Route> routes{Route::Cf, Route::Projection, Route::Quadrature};
  std::string out = ".";
  std::optional<EpsRange> eps_range;
};

EpsRange parse_eps_range(const std::string& text);
std::set<Route> parse_routes(const std::string& text);

// Validates the parameter block; ConfigError names the offending field.
ReducedParams resolve_params(const RunConfig& cfg);
void validate_config(const RunConfig& cfg);

struct Check {
  std::string name;
  double value;
  double limit;
  bool pass() const { return value <= limit; }
};

struct RunOutputs {
  std::string solution_csv;
  Json spectrum;
  Json report;
  std::vector<Check> checks;
  bool all_pass() const;
};

RunOutputs run_pipeline(const RunConfig& cfg, bool want_solution = true);

// Subcommands; each writes into cfg.out and returns the process exit code.
int cmd_run(const RunConfig& cfg);
int cmd_spectrum(const RunConfig& cfg);
int cmd_validate(const RunConfig& cfg);

struct ScanRow {
  double epsilon, nu_exact, nu_wkb, nu_sawtooth;
};
std::vector<ScanRow> scan_floquet(double alpha, const std::vector<double>& eps, double tol = 1e-12);
std::string scan_csv(const std::vector<ScanRow>& rows);
int cmd_scan_floquet(const RunConfig& cfg);

struct WkbCompareResult {
  std::string csv;
  Json summary;
};
WkbCompareResult wkb_compare(double alpha, const std::vector<double>& eps, int nodes_per_period,
                             double tol);
int cmd_wkb_compare(const RunConfig& cfg);

}  // namespace tla
