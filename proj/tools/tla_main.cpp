// Command-line front end: run, spectrum, validate, scan-floquet, wkb-compare.
#include <CLI11.hpp>
#include <iostream>

#include "tla/errors.hpp"
#include "tla/pipeline.hpp"

namespace {

enum Exit { kOk = 0, kConfig = 2, kNumeric = 3, kIo = 4 };

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-level atom beyond the rotating-wave approximation: exact and WKB dynamics, Floquet exponent, spectra"};
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key = value file; command-line flags override it");
  app.allow_config_extras(false);

  tla::RunConfig cfg;
  double gamma = 0, epsilon = 0, alpha = 0, omega0 = 0, omega = 0, rabi = 0;
  std::string eps_range, routes;
  auto* o_gamma = app.add_option("--gamma", gamma, "coupling Omega_0/omega");
  auto* o_eps = app.add_option("--epsilon", epsilon, "transition omega0/omega");
  auto* o_alpha = app.add_option("--alpha", alpha, "coupling ratio gamma/epsilon");
  auto* o_w0 = app.add_option("--omega0", omega0, "atomic frequency (rad/s)");
  auto* o_w = app.add_option("--omega", omega, "laser frequency (rad/s)");
  auto* o_rabi = app.add_option("--rabi", rabi, "Rabi frequency (rad/s)");
  auto* o_range = app.add_option("--eps-range", eps_range, "epsilon sweep a:b:step");
  auto* o_routes = app.add_option("--routes", routes, "comma list of cf,projection,quadrature,wkb");
  app.add_option("--out", cfg.out, "output directory");
  app.add_option("--tol", cfg.tol, "integrator absolute/relative tolerance");
  app.add_option("--periods", cfg.periods, "projection window in periods");
  app.add_option("--samples-per-period", cfg.samples_per_period, "projection sampling");
  app.add_option("--nodes-per-period", cfg.nodes_per_period, "solution grid density");
  app.add_option("--jmax", cfg.jmax, "spectral index cutoff");

  auto* run = app.add_subcommand("run", "solution.csv, spectrum.json and report.json");
  auto* spec = app.add_subcommand("spectrum", "spectrum.json only");
  auto* val = app.add_subcommand("validate", "invariant suite; exit 3 on any failure");
  auto* scan = app.add_subcommand("scan-floquet", "nu(epsilon) at fixed alpha");
  auto* cmp = app.add_subcommand("wkb-compare", "pointwise WKB errors against the exact solution");
  for (auto* s : {run, spec, val, scan, cmp}) s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*o_gamma) cfg.gamma = gamma;
    if (*o_eps) cfg.epsilon = epsilon;
    if (*o_alpha) cfg.alpha = alpha;
    if (*o_w0) cfg.omega0 = omega0;
    if (*o_w) cfg.omega = omega;
    if (*o_rabi) cfg.rabi = rabi;
    if (*o_range) cfg.eps_range = tla::parse_eps_range(eps_range);
    if (*o_routes) cfg.routes = tla::parse_routes(routes);

    if (*run) return tla::cmd_run(cfg);
    if (*spec) return tla::cmd_spectrum(cfg);
    if (*val) return tla::cmd_validate(cfg);
    if (*scan) return tla::cmd_scan_floquet(cfg);
    if (*cmp) return tla::cmd_wkb_compare(cfg);
  } catch (const tla::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const tla::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kIo;
  } catch (const tla::Error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kNumeric;
  }
  return kOk;
}
