#include "tla/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <sstream>

#include "tla/errors.hpp"
#include "tla/floquet.hpp"
#include "tla/kernels.hpp"
#include "tla/ode.hpp"
#include "tla/wkb.hpp"

namespace tla {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Json cplx_json(cplx z) { return Json::array({z.real(), z.imag()}); }

Json params_json(const ReducedParams& p) {
  Json j;
  j["gamma"] = p.gamma;
  j["epsilon"] = p.epsilon;
  j["alpha"] = p.alpha;
  j["lambda"] = p.lambda;
  j["k2"] = p.k2;
  j["epsilon0"] = p.epsilon0;
  return j;
}

Json lines_json(const Lines& lines) {
  Json arr = Json::array();
  for (const SpectrumLine& l : lines) {
    Json o;
    o["freq"] = l.freq;
    o["amplitude"] = l.amplitude;
    o["class"] = to_string(l.klass);
    o["j"] = l.j;
    o["route"] = to_string(l.route);
    arr.push_back(o);
  }
  return arr;
}

// max |a - ref| over (class, j) present in both, relative to the largest
// reference amplitude of the same observable.
double discrepancy(const Lines& a, const Lines& ref, bool dipole) {
  double scale = 0.0, worst = 0.0;
  for (const SpectrumLine& r : ref)
    if (is_dipole(r.klass) == dipole) scale = std::max(scale, std::abs(r.amplitude));
  if (scale == 0.0) return 0.0;
  for (const SpectrumLine& l : a) {
    if (is_dipole(l.klass) != dipole) continue;
    for (const SpectrumLine& r : ref)
      if (r.klass == l.klass && r.j == l.j) worst = std::max(worst, std::abs(l.amplitude - r.amplitude));
  }
  return worst / scale;
}

void append(Lines& to, const Lines& from) { to.insert(to.end(), from.begin(), from.end()); }

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double w = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) w = std::max(w, std::abs(a[i] - b[i]));
  return w;
}

std::string check_path(const RunConfig& cfg, const std::string& name) {
  std::error_code ec;
  std::filesystem::create_directories(cfg.out, ec);
  if (ec) throw IoError("cannot create output directory " + cfg.out + ": " + ec.message());
  return (std::filesystem::path(cfg.out) / name).string();
}

}  // namespace

std::vector<double> EpsRange::values() const {
  const long n = static_cast<long>(std::floor((b - a) / step + 1e-9)) + 1;
  std::vector<double> v(n);
  for (long i = 0; i < n; ++i) v[i] = a + i * step;
  return v;
}

EpsRange parse_eps_range(const std::string& text) {
  EpsRange r;
  char c1 = 0, c2 = 0;
  std::istringstream is(text);
  if (!(is >> r.a >> c1 >> r.b >> c2 >> r.step) || c1 != ':' || c2 != ':' || !is.eof() ||
      !(r.step > 0.0) || !(r.b >= r.a) || !(r.a > 0.0))
    throw ConfigError("eps-range: expected a:b:step with 0 < a <= b and step > 0, got '" + text + "'");
  return r;
}

std::set<Route> parse_routes(const std::string& text) {
  std::set<Route> out;
  std::istringstream is(text);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    if (tok == "cf") out.insert(Route::Cf);
    else if (tok == "projection") out.insert(Route::Projection);
    else if (tok == "quadrature") out.insert(Route::Quadrature);
    else if (tok == "wkb") out.insert(Route::Wkb);
    else throw ConfigError("routes: unknown route '" + tok + "'");
  }
  if (out.empty()) throw ConfigError("routes: empty list");
  return out;
}

void validate_config(const RunConfig& cfg) {
  if (!(cfg.tol > 0.0)) throw ConfigError("tol: must be positive");
  if (cfg.nodes_per_period < 8 || cfg.nodes_per_period % 4 != 0)
    throw ConfigError("nodes-per-period: must be a multiple of 4, at least 8");
  if (cfg.samples_per_period < 8 || cfg.samples_per_period % 4 != 0)
    throw ConfigError("samples-per-period: must be a multiple of 4, at least 8");
  if (cfg.periods < 1) throw ConfigError("periods: must be >= 1");
  if (cfg.jmax < 1) throw ConfigError("jmax: must be >= 1");
}

ReducedParams resolve_params(const RunConfig& cfg) {
  const bool phys = cfg.omega0 || cfg.omega || cfg.rabi;
  const bool red = cfg.gamma || cfg.epsilon || cfg.alpha;
  if (phys && red) throw ConfigError("params: give either omega0/omega/rabi or epsilon with gamma/alpha, not both");
  try {
    if (phys) {
      if (!cfg.omega0) throw ConfigError("omega0: missing");
      if (!cfg.omega) throw ConfigError("omega: missing");
      if (!cfg.rabi) throw ConfigError("rabi: missing");
      return reduce({*cfg.omega0, *cfg.omega, *cfg.rabi});
    }
    if (!cfg.epsilon) throw ConfigError("epsilon: missing");
    if (cfg.gamma && cfg.alpha) throw ConfigError("alpha: conflicts with gamma, give one of them");
    if (cfg.alpha) return ReducedParams::from_alpha(*cfg.alpha, *cfg.epsilon);
    if (!cfg.gamma) throw ConfigError("gamma: missing (or give alpha)");
    return ReducedParams::from_gamma(*cfg.gamma, *cfg.epsilon);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

bool RunOutputs::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass(); });
}

RunOutputs run_pipeline(const RunConfig& cfg, bool want_solution) {
  validate_config(cfg);
  const ReducedParams p = resolve_params(cfg);
  const StepControl ctl{cfg.tol, cfg.tol};
  RunOutputs out;
  std::vector<std::string> warnings;
  auto check = [&](const std::string& name, double v, double lim) { out.checks.push_back({name, v, lim}); };

  const SolutionGrid quarter = integrate_uv(p, cfg.nodes_per_period, ctl);
  const SolutionGrid full = extend_solution(quarter, kTwoPi);
  const BlochSeries series = dipole_inversion(full);

  if (want_solution) {
    std::ostringstream csv;
    csv << "x,re_u,im_u,re_v,im_v,D,W,first_integral_dev\n";
    const double e2 = 0.25 * p.epsilon * p.epsilon;
    for (std::size_t k = 0; k < full.size(); ++k) {
      const double dev = std::norm(full.u[k]) + e2 * std::norm(full.v[k]) - 1.0;
      csv << fmt17(full.x[k]) << ',' << fmt17(full.u[k].real()) << ',' << fmt17(full.u[k].imag()) << ','
          << fmt17(full.v[k].real()) << ',' << fmt17(full.v[k].imag()) << ',' << fmt17(series.D[k]) << ','
          << fmt17(series.W[k]) << ',' << fmt17(dev) << '\n';
    }
    out.solution_csv = csv.str();
  }

  Json rep;
  rep["params"] = params_json(p);

  const BlochResiduals br = bloch_residuals(series, p.gamma, p.epsilon);
  const MonodromyNu mono = monodromy(full);
  const double nu_tr = nu_from_trace(full);
  const double identity = std::abs(full.u[full.nodes_per_period].real() - (1.0 - 2.0 * mono.s * mono.s));
  if (mono.clamped) warnings.push_back("monodromy: |eps Re[u v*]| exceeded 1 by more than 1e-6; clamped");
  {
    Json inv;
    inv["first_integral"] = full.first_integral_dev;
    inv["derivative_relations"] = derivative_relation_residual(full);
    inv["bloch_dipole"] = br.dipole;
    inv["bloch_inversion"] = br.inversion;
    inv["bloch_energy"] = br.energy;
    inv["monodromy_identity"] = identity;
    rep["invariants"] = inv;
    check("first_integral", full.first_integral_dev, 1e-9);
    check("derivative_relations", inv["derivative_relations"].get<double>(), 1e-8);
    check("bloch_dipole", br.dipole, 1e-6);
    check("bloch_inversion", br.inversion, 1e-6);
    check("bloch_energy", br.energy, 1e-6);
    check("monodromy_identity", identity, 1e-9);
    check("nu_arcsin_vs_arccos", std::abs(mono.nu - nu_tr), 1e-9);
  }

  Json nuj;
  nuj["monodromy"] = mono.nu;
  nuj["trace"] = nu_tr;

  Lines all, ref;
  double nu = mono.nu;
  double sum_rule = 0.0;
  Json routes = Json::object();

  if (p.gamma == 0.0) {
    const FloquetData fd = analytic_free(p);
    nu = fd.nu;
    nuj["analytic"] = fd.nu;
    ref = {{0.0, -1.0, LineClass::EvenHarmonic, 0, Route::Cf}};
    all = ref;
    rep["floquet"] = Json{{"analytic", true}, {"nu", fd.nu}};
    warnings.push_back("gamma = 0: free atom, analytic branch (no dipole lines, W = -1)");
  } else {
    FloquetData fd = solve_recurrence(p, mono.nu);
    const SuperpositionFit fit = fit_superposition(full, fd);
    nu = fd.nu;
    nuj["cf"] = fd.nu;
    check("nu_monodromy_vs_cf", std::abs(fd.nu - mono.nu), 1e-6);
    check("recurrence_residual", fd.residual, 1e-10);
    check("superposition_reconstruction", fit.reconstruction_error, fit.fallback ? 1e-4 : 1e-6);
    {
      Json fj;
      fj["J"] = fd.J;
      fj["M_e"] = fd.M_e;
      fj["M_o"] = fd.M_o;
      fj["A"] = cplx_json(fd.A);
      fj["B"] = cplx_json(fd.B);
      fj["orientation"] = fd.orientation;
      fj["recurrence_residual"] = fd.residual;
      fj["fit_condition"] = fit.condition;
      fj["fit_fallback"] = fit.fallback;
      fj["fit_reconstruction_error"] = fit.reconstruction_error;
      rep["floquet"] = fj;
    }
    for (const std::string& w : fd.warnings) warnings.push_back(w);

    Lines cf;
    const bool need_cf = cfg.routes.count(Route::Cf) ||
                         (cfg.routes.count(Route::Quadrature) && !cfg.routes.count(Route::Projection));
    if (need_cf) {
      cf = dipole_amps_cf(fd, cfg.jmax);
      try {
        append(cf, inversion_amps(cf, nu, p));
      } catch (const DegenerateError& e) {
        warnings.push_back(std::string("cf inversion lines skipped: ") + e.what());
      }
    }

    Lines proj;
    if (cfg.routes.count(Route::Projection)) {
      const SolutionGrid qp = integrate_uv(p, cfg.samples_per_period, ctl);
      const SolutionGrid ext = extend_solution(qp, cfg.periods * kTwoPi);
      ProjectionOptions po;
      po.j_max = cfg.jmax;
      po.min_periods = std::min(po.min_periods, cfg.periods);
      if (cfg.periods < 32) warnings.push_back("projection window below 32 periods");
      const ProjectionReport pr = amps_by_projection(dipole_inversion(ext), nu, po);
      proj = pr.lines;
      Json pj;
      pj["periods"] = cfg.periods;
      pj["samples_per_period"] = cfg.samples_per_period;
      pj["rms_D"] = pr.rms_D;
      pj["max_D"] = pr.max_D;
      pj["rms_W"] = pr.rms_W;
      pj["max_W"] = pr.max_W;
      pj["cond_D"] = pr.cond_D;
      pj["cond_W"] = pr.cond_W;
      routes["projection"] = pj;
    }
    ref = proj.empty() ? cf : proj;

    Lines quad;
    if (cfg.routes.count(Route::Quadrature)) {
      try {
        quad = amps_by_quadrature(split_from_lines(ref), nu, cfg.jmax);
      } catch (const DegenerateError& e) {
        warnings.push_back(std::string("quadrature route disabled: ") + e.what());
      }
    }

    Json cross;
    double worst = 0.0;
    auto compare = [&](const char* name, const Lines& a) {
      if (a.empty()) return;
      const double d = discrepancy(a, ref, true), w = discrepancy(a, ref, false);
      cross[name] = Json{{"dipole", d}, {"inversion", w}};
      worst = std::max({worst, d, w});
    };
    if (!proj.empty()) compare("cf_vs_projection", cf);
    compare("quadrature_vs_reference", quad);
    rep["cross_route"] = cross;
    rep["cross_route_discrepancy"] = worst;
    check("cross_route_discrepancy", worst, 1e-4);

    if (cfg.routes.count(Route::Cf)) append(all, cf);
    append(all, proj);
    append(all, quad);
  }

  if (cfg.routes.count(Route::Wkb)) {
    if (p.epsilon < kWkbEpsilonMin) warnings.push_back("wkb: epsilon below 5, outside the validity range");
    const WkbSolution w(p);
    nuj["wkb"] = w.nu();
    nuj["wkb_literal_reading"] = w.nu_literal();
    rep["wkb_omega"] = w.omega();
    try {
      Lines wl = wkb_dipole_amps(p, cfg.jmax);
      append(wl, wkb_inversion_amps(p, cfg.jmax));
      if (!ref.empty() && p.gamma > 0.0)
        rep["cross_route"]["wkb_vs_reference"] =
            Json{{"dipole", discrepancy(wl, ref, true)}, {"inversion", discrepancy(wl, ref, false)}};
      append(all, wl);
    } catch (const IntegralityError& e) {
      warnings.push_back(std::string("wkb lines skipped: ") + e.what());
    }
  }

  if (!ref.empty()) {
    sum_rule = sum_rule_residual(ref);
    check("sum_rule", sum_rule, 1e-6);
  }
  rep["nu"] = nuj;
  rep["routes"] = routes;
  rep["sum_rule_residual"] = sum_rule;

  if (!ref.empty()) {
    const Reconstruction rc = reconstruct(ref, series.x, 16);
    const double eD = max_abs_diff(rc.D, series.D), eW = max_abs_diff(rc.W, series.W);
    rep["reconstruction"] = Json{{"cutoff", 16}, {"D_linf", eD}, {"W_linf", eW}};
    check("reconstruction_D", eD, 1e-3);
    check("reconstruction_W", eW, 1e-3);
  }

  Json checks = Json::array();
  for (const Check& c : out.checks)
    checks.push_back(Json{{"name", c.name}, {"value", c.value}, {"limit", c.limit}, {"pass", c.pass()}});
  rep["checks"] = checks;
  rep["warnings"] = warnings;
  out.report = rep;

  Json sp;
  sp["params"] = params_json(p);
  sp["nu"] = nu;
  sp["lines"] = lines_json(all);
  sp["sum_rule_residual"] = sum_rule;
  out.spectrum = sp;
  return out;
}

int cmd_run(const RunConfig& cfg) {
  const RunOutputs o = run_pipeline(cfg, true);
  write_text_file(check_path(cfg, "solution.csv"), o.solution_csv);
  write_text_file(check_path(cfg, "spectrum.json"), to_json_text(o.spectrum));
  write_text_file(check_path(cfg, "report.json"), to_json_text(o.report));
  return 0;
}

int cmd_spectrum(const RunConfig& cfg) {
  const RunOutputs o = run_pipeline(cfg, false);
  write_text_file(check_path(cfg, "spectrum.json"), to_json_text(o.spectrum));
  return 0;
}

int cmd_validate(const RunConfig& cfg) {
  RunConfig c = cfg;
  c.routes = {Route::Cf, Route::Projection, Route::Quadrature};
  const RunOutputs o = run_pipeline(c, false);
  write_text_file(check_path(cfg, "report.json"), to_json_text(o.report));
  for (const Check& ch : o.checks)
    std::cout << (ch.pass() ? "[PASS] " : "[FAIL] ") << ch.name << " = " << fmt17(ch.value)
              << " (limit " << ch.limit << ")\n";
  return o.all_pass() ? 0 : 3;
}

std::vector<ScanRow> scan_floquet(double alpha, const std::vector<double>& eps, double tol) {
  std::vector<ScanRow> rows(eps.size());
  kernels::for_each_index(eps.size(), [&](std::size_t i) {
    const ReducedParams p = ReducedParams::from_alpha(alpha, eps[i]);
    // only the pi/2 node matters, so a coarse node lattice is enough
    const SolutionGrid g = integrate_uv(p, 8, {tol, tol});
    rows[i] = {eps[i], nu_from_monodromy(g), wkb_nu(p), wkb_sawtooth_value(eps[i], alpha)};
  });
  return rows;
}

std::string scan_csv(const std::vector<ScanRow>& rows) {
  std::ostringstream os;
  os << "epsilon,nu_exact,nu_wkb,nu_sawtooth\n";
  for (const ScanRow& r : rows)
    os << fmt17(r.epsilon) << ',' << fmt17(r.nu_exact) << ',' << fmt17(r.nu_wkb) << ','
       << fmt17(r.nu_sawtooth) << '\n';
  return os.str();
}

namespace {

double scan_alpha(const RunConfig& cfg) {
  if (cfg.alpha) {
    if (!(*cfg.alpha >= 0.0)) throw ConfigError("alpha: must be >= 0");
    return *cfg.alpha;
  }
  if (cfg.gamma && cfg.epsilon && *cfg.epsilon > 0.0) return *cfg.gamma / *cfg.epsilon;
  throw ConfigError("alpha: required (coupling ratio held fixed along the scan)");
}

std::vector<double> scan_epsilons(const RunConfig& cfg) {
  if (cfg.eps_range) return cfg.eps_range->values();
  if (cfg.epsilon) {
    if (!(*cfg.epsilon > 0.0)) throw ConfigError("epsilon: must be > 0");
    return {*cfg.epsilon};
  }
  throw ConfigError("eps-range: required (or a single epsilon)");
}

}  // namespace

int cmd_scan_floquet(const RunConfig& cfg) {
  validate_config(cfg);
  if (!cfg.eps_range) throw ConfigError("eps-range: required for scan-floquet");
  const double alpha = scan_alpha(cfg);
  const auto eps = cfg.eps_range->values();
  const auto rows = scan_floquet(alpha, eps, cfg.tol);
  write_text_file(check_path(cfg, "floquet_scan.csv"), scan_csv(rows));

  std::vector<double> e, nu;
  for (const ScanRow& r : rows) {
    e.push_back(r.epsilon);
    nu.push_back(r.nu_exact);
  }
  const SawtoothFit fit = analyze_sawtooth(e, nu, alpha);
  Json s;
  s["alpha"] = alpha;
  s["epsilon0"] = epsilon_zero(alpha);
  s["rows"] = rows.size();
  s["cusps"] = fit.cusps;
  s["period_estimate"] = fit.period;
  s["period_expected"] = 2.0 * epsilon_zero(alpha);
  s["triangle_fit_residual"] = fit.fit_residual;
  s["fixed_law_residual"] = fit.fixed_law_residual;
  write_text_file(check_path(cfg, "floquet_scan_summary.json"), to_json_text(s));
  std::cout << "period estimate " << fmt17(fit.period) << " (2 eps0 = " << fmt17(2.0 * epsilon_zero(alpha))
            << ")\n";
  return 0;
}

WkbCompareResult wkb_compare(double alpha, const std::vector<double>& eps, int nodes_per_period,
                             double tol) {
  struct Point {
    std::string csv;
    Json summary;
    double max_D = 0.0;
  };
  std::vector<Point> pts(eps.size());
  kernels::for_each_index(eps.size(), [&](std::size_t i) {
    const ReducedParams p = ReducedParams::from_alpha(alpha, eps[i]);
    const SolutionGrid full = extend_solution(integrate_uv(p, nodes_per_period, {tol, tol}), kTwoPi);
    const BlochSeries s = dipole_inversion(full);
    const WkbSolution w(p);
    double mx[4] = {0, 0, 0, 0}, mean[4] = {0, 0, 0, 0};
    std::ostringstream os;
    for (std::size_t k = 0; k < full.size(); ++k) {
      const double x = full.x[k];
      const auto [uw, vw] = w.uv(x);
      const double e[4] = {std::abs(uw - full.u[k]), std::abs(vw - full.v[k]),
                           std::abs(w.delta1(x) + w.delta2(x) - s.D[k]),
                           std::abs(w.pi1(x) + w.pi2(x) - s.W[k])};
      for (int c = 0; c < 4; ++c) {
        mx[c] = std::max(mx[c], e[c]);
        mean[c] += e[c] / full.size();
      }
      os << fmt17(eps[i]) << ',' << fmt17(x) << ',' << fmt17(e[0]) << ',' << fmt17(e[1]) << ','
         << fmt17(e[2]) << ',' << fmt17(e[3]) << '\n';
    }
    const double nu_exact = nu_from_monodromy(full);
    Json j;
    j["epsilon"] = eps[i];
    j["alpha"] = alpha;
    const char* names[4] = {"u", "v", "D", "W"};
    for (int c = 0; c < 4; ++c) {
      j[std::string("max_err_") + names[c]] = mx[c];
      j[std::string("mean_err_") + names[c]] = mean[c];
    }
    j["nu_exact"] = nu_exact;
    j["nu_wkb"] = w.nu();
    j["err_nu"] = std::abs(w.nu() - nu_exact);
    j["valid"] = w.valid();
    Json warn = Json::array();
    if (!w.valid()) warn.push_back("epsilon below 5: outside the WKB validity range");
    j["warnings"] = warn;
    pts[i] = {os.str(), j, mx[2]};
  });

  WkbCompareResult r;
  std::string csv = "epsilon,x,err_u,err_v,err_D,err_W\n";
  Json points = Json::array();
  Json ratios = Json::array();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    csv += pts[i].csv;
    points.push_back(pts[i].summary);
    if (i > 0) ratios.push_back(pts[i].max_D / pts[i - 1].max_D);
  }
  r.csv = csv;
  r.summary["alpha"] = alpha;
  r.summary["points"] = points;
  r.summary["max_err_D_ratios"] = ratios;
  return r;
}

int cmd_wkb_compare(const RunConfig& cfg) {
  validate_config(cfg);
  const double alpha = scan_alpha(cfg);
  const auto eps = scan_epsilons(cfg);
  for (double e : eps)
    if (!(e > 0.0)) throw ConfigError("epsilon: must be > 0");
  const WkbCompareResult r = wkb_compare(alpha, eps, cfg.nodes_per_period, cfg.tol);
  write_text_file(check_path(cfg, "wkb_compare.csv"), r.csv);
  write_text_file(check_path(cfg, "wkb_summary.json"), to_json_text(r.summary));
  return 0;
}

}  // namespace tla
