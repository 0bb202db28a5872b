#include "tla/wkb.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tla/elliptic.hpp"
#include "tla/errors.hpp"
#include "tla/kernels.hpp"
#include "tla/quadrature.hpp"

namespace tla {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx I{0.0, 1.0};

double root_s(double x, double alpha) {
  const double c = std::cos(x);
  return std::sqrt(1.0 + 4.0 * alpha * alpha * c * c);
}

double frac_dist(double v) { return std::abs(v - std::nearbyint(v)); }

}  // namespace

WkbSolution::WkbSolution(const ReducedParams& p)
    : p_(p), E_(ellip_Ecomp(p.k2)), K_(ellip_K(p.k2)) {
  const double a2 = p.alpha * p.alpha;
  omega_ = (p.epsilon * p.lambda * E_ + ((1.0 + 8.0 * a2) * E_ - K_) / (6.0 * p.epsilon * p.lambda)) / kPi;
}

double WkbSolution::s(double x) const { return root_s(x, p_.alpha); }

double WkbSolution::psi(double x) const {
  const double E = ellip_E(x, p_.k2), F = ellip_F(x, p_.k2);
  const double a2 = p_.alpha * p_.alpha;
  return p_.epsilon * p_.lambda * E + ((1.0 + 8.0 * a2) * E - F) / (6.0 * p_.epsilon * p_.lambda);
}

cplx WkbSolution::phase(double x) const { return std::exp(I * (0.5 * psi(x))); }

cplx WkbSolution::f1(double x) const {
  const double a = p_.alpha;
  return std::sqrt((p_.lambda + 2.0 * a) * (s(x) - 2.0 * a * std::cos(x))) * phase(x);
}

cplx WkbSolution::f2(double x) const {
  const double a = p_.alpha;
  return std::sqrt((p_.lambda - 2.0 * a) * (s(x) + 2.0 * a * std::cos(x))) * std::conj(phase(x));
}

std::pair<cplx, cplx> WkbSolution::uv(double x) const {
  const double a = p_.alpha, lam = p_.lambda, sx = std::sqrt(s(x));
  const cplx drive = std::exp(I * (p_.gamma * std::sin(x)));
  const cplx F1 = f1(x), F2 = f2(x);
  const cplx u = std::sqrt(lam) * drive / (2.0 * sx) *
                 ((1.0 - 2.0 * a / lam) * F1 + (1.0 + 2.0 * a / lam) * F2);
  const cplx v = I * drive / (p_.epsilon * std::sqrt(lam)) * (F2 - F1) / sx;
  return {u, v};
}

double WkbSolution::delta1(double x) const { return wkb_delta1(x, p_.alpha); }
double WkbSolution::pi1(double x) const { return wkb_pi1(x, p_.alpha); }

double WkbSolution::delta2(double x) const {
  return 2.0 * p_.alpha / p_.lambda * std::cos(psi(x)) / s(x);
}

double WkbSolution::pi2(double x) const {
  return -4.0 * p_.alpha * p_.alpha / p_.lambda * std::cos(x) * std::cos(psi(x)) / s(x);
}

double WkbSolution::nu() const {
  return std::asin(std::min(1.0, std::abs(std::sin(kPi * omega_)))) / kPi;
}

double WkbSolution::nu_literal() const {
  return std::asin(std::min(1.0, std::abs(std::sin(omega_))));
}

cplx wkb_phase(double x, const ReducedParams& p) { return WkbSolution(p).phase(x); }
std::pair<cplx, cplx> wkb_uv(double x, const ReducedParams& p) { return WkbSolution(p).uv(x); }
double wkb_omega(const ReducedParams& p) { return WkbSolution(p).omega(); }
double wkb_nu(const ReducedParams& p) { return WkbSolution(p).nu(); }

double wkb_delta1(double x, double alpha) {
  const double lam = std::sqrt(1.0 + 4.0 * alpha * alpha);
  return -2.0 * alpha / lam * std::cos(x) / root_s(x, alpha);
}

double wkb_pi1(double x, double alpha) {
  const double lam = std::sqrt(1.0 + 4.0 * alpha * alpha);
  return -1.0 / (lam * root_s(x, alpha));
}

double wkb_delta2(double x, const ReducedParams& p) { return WkbSolution(p).delta2(x); }
double wkb_pi2(double x, const ReducedParams& p) { return WkbSolution(p).pi2(x); }

double wkb_sawtooth_value(double epsilon, double alpha) {
  const double r = epsilon / (2.0 * epsilon_zero(alpha));
  const double t = r - std::floor(r);
  return (t <= 0.5) ? t : 1.0 - t;
}

std::vector<std::pair<double, double>> wkb_sawtooth(const std::vector<double>& epsilons, double alpha) {
  std::vector<std::pair<double, double>> out;
  for (double e : epsilons) out.emplace_back(e, wkb_sawtooth_value(e, alpha));
  return out;
}

// int_0^{pi/2} cos^2 x / sqrt(1 + 4a^2 cos^2 x) = (E - (1-k^2) K) / (lambda k^2)
double wkb_first_harmonic_closed(double alpha) {
  if (alpha == 0.0) return 0.0;
  const double lam = std::sqrt(1.0 + 4.0 * alpha * alpha);
  const double m = 4.0 * alpha * alpha / (lam * lam);
  const double integral = (ellip_Ecomp(m) - (1.0 - m) * ellip_K(m)) / (lam * m);
  return -8.0 * alpha / (kPi * lam) * integral;
}

int wkb_sign_rule(const ReducedParams& p, double tol) {
  const WkbSolution w(p);
  const double fp = frac_dist(w.omega() + w.nu()), fm = frac_dist(w.omega() - w.nu());
  const bool up = fp < tol, down = fm < tol;
  if (up == down) {
    std::ostringstream os;
    os << "sign rule needs exactly one of Omega +- nu integral; distances " << fp << ", " << fm;
    throw IntegralityError(os.str(), fp, fm);
  }
  return up ? 1 : -1;
}

namespace {

struct AmpJob {
  LineClass klass;
  int j;
};

Lines run_jobs(const std::vector<AmpJob>& jobs, const WkbSolution& w, int sg, double abs_tol) {
  const ReducedParams& p = w.params();
  const double a = p.alpha, lam = p.lambda, nu = w.nu();
  const double rate = p.epsilon * p.lambda;
  Lines out(jobs.size());
  kernels::for_each_index(jobs.size(), [&](std::size_t i) {
    const AmpJob& jb = jobs[i];
    const double f = line_frequency(jb.klass, jb.j, nu);
    const bool slow = jb.klass == LineClass::OddHarmonic || jb.klass == LineClass::EvenHarmonic;
    const double panel = kPi / (2.0 * (1.0 + f + (slow ? 0.0 : rate)));
    auto integ = [&](auto g) { return integrate_panels(g, 0.0, 0.5 * kPi, panel, abs_tol * 0.1); };
    auto s = [a](double x) { return root_s(x, a); };
    double amp = 0.0;
    switch (jb.klass) {
      case LineClass::OddHarmonic:
        amp = -8.0 * a / (kPi * lam) *
              integ([&](double x) { return std::cos(x) * std::cos(f * x) / s(x); });
        break;
      case LineClass::EvenHarmonic: {
        const double m = (jb.j == 0) ? 1.0 : 2.0;
        amp = -2.0 * m / (kPi * lam) * integ([&](double x) { return std::cos(f * x) / s(x); });
        break;
      }
      case LineClass::HyperRamanUp:
      case LineClass::ShiftedOddUp:
      case LineClass::HyperRamanDown:
      case LineClass::ShiftedOddDown: {
        const bool up = jb.klass == LineClass::HyperRamanUp || jb.klass == LineClass::ShiftedOddUp;
        const double shift = (up ? sg : -sg) * f;
        if (is_dipole(jb.klass)) {
          amp = 4.0 * a / (kPi * lam) *
                integ([&](double x) { return std::cos(w.psi(x) + shift * x) / s(x); });
        } else {
          amp = -8.0 * a * a / (kPi * lam) * integ([&](double x) {
                  return std::cos(x) * std::cos(w.psi(x) + shift * x) / s(x);
                });
        }
        break;
      }
    }
    out[i] = {f, amp, jb.klass, jb.j, Route::Wkb};
  });
  return out;
}

}  // namespace

Lines wkb_dipole_amps(const ReducedParams& p, int j_max, double abs_tol) {
  const WkbSolution w(p);
  const int sg = wkb_sign_rule(p);
  std::vector<AmpJob> jobs;
  for (int j = 0; j <= j_max; ++j) jobs.push_back({LineClass::OddHarmonic, j});
  for (int j = 0; j <= j_max; ++j) jobs.push_back({LineClass::HyperRamanUp, j});
  for (int j = 1; j <= j_max; ++j) jobs.push_back({LineClass::HyperRamanDown, j});
  return run_jobs(jobs, w, sg, abs_tol);
}

Lines wkb_inversion_amps(const ReducedParams& p, int j_max, double abs_tol) {
  const WkbSolution w(p);
  const int sg = wkb_sign_rule(p);
  std::vector<AmpJob> jobs;
  for (int j = 0; j <= j_max; ++j) jobs.push_back({LineClass::EvenHarmonic, j});
  for (int j = 0; j <= j_max; ++j) jobs.push_back({LineClass::ShiftedOddUp, j});
  for (int j = 0; j <= j_max; ++j) jobs.push_back({LineClass::ShiftedOddDown, j});
  return run_jobs(jobs, w, sg, abs_tol);
}

ComponentSplit wkb_split(const ReducedParams& p) {
  const WkbSolution w(p);
  ComponentSplit s{[w](double x) { return w.delta1(x); }, [w](double x) { return w.delta2(x); },
                   [w](double x) { return w.pi1(x); }, [w](double x) { return w.pi2(x); }};
  s.phase_rate = p.epsilon * p.lambda;
  return s;
}

HierarchyReport wkb_hierarchy_check(const ReducedParams& p, int order) {
  if (order < 0 || order > 1) throw PreconditionError("wkb_hierarchy_check: order must be 0 or 1");
  const double a = p.alpha, a2 = a * a, lam = p.lambda;
  HierarchyReport r;
  r.order = order;

  auto z0p = [&](double x) { return cplx(0.0, 0.5 * root_s(x, a)); };
  auto z1p = [&](double x) {
    const double c = std::cos(x), sn = std::sin(x), s = root_s(x, a);
    return 2.0 * a2 * c * sn / (s * s) + a * sn / s;
  };
  auto z1pp = [&](double x) {
    const double c = std::cos(x), sn = std::sin(x), s = root_s(x, a);
    return 2.0 * a2 * std::cos(2.0 * x) / (s * s) + 16.0 * a2 * a2 * c * c * sn * sn / std::pow(s, 4) +
           a * c / s + 4.0 * a2 * a * c * sn * sn / std::pow(s, 3);
  };
  // z0'' by a fourth-order difference so the relation is not checked against itself
  auto z0pp = [&](double x) {
    const double h = 1e-3;
    return (-z0p(x + 2 * h) + 8.0 * z0p(x + h) - 8.0 * z0p(x - h) + z0p(x - 2 * h)) / (12.0 * h);
  };

  const int n = 64;
  for (int i = 0; i <= n; ++i) {
    const double x = 2.0 * kPi * i / n;
    const double c = std::cos(x);
    r.z0_residual = std::max(r.z0_residual, std::abs(z0p(x) * z0p(x) + 0.25 * (1.0 + 4.0 * a2 * c * c)));
    const double lead = integrate([&](double t) { return z0p(t).imag(); }, 0.0, x, 1e-14);
    r.leading_phase_error = std::max(r.leading_phase_error, std::abs(lead - 0.5 * lam * ellip_E(x, p.k2)));
  }
  if (order == 0) return r;

  for (int i = 0; i <= n; ++i) {
    const double x = 2.0 * kPi * i / n;
    const double sn = std::sin(x), c = std::cos(x), s = root_s(x, a);
    r.z1_residual = std::max(r.z1_residual, std::abs(2.0 * z0p(x) * z1p(x) + z0pp(x) - I * (a * sn)));
    const cplx printed = -z0pp(x) / (2.0 * z0p(x));
    r.printed_z1_gap = std::max(r.printed_z1_gap, std::abs(z1p(x) - printed));
    const double integ = integrate(z1p, 0.0, x, 1e-14);
    const double pref = std::sqrt((s - 2.0 * a * c) / s) / std::sqrt((lam - 2.0 * a) / lam);
    r.amplitude_error = std::max(r.amplitude_error, std::abs(std::exp(integ) - pref));
  }
  auto im_z2 = [&](double x) {
    const double z = z1p(x);
    return (z1pp(x) + z * z) / root_s(x, a);
  };
  for (int k = 1; k <= 2; ++k) {
    const double x = k * kPi;
    const double lhs = integrate_panels(im_z2, 0.0, x, 0.25, 1e-14);
    const double rhs = ((1.0 + 8.0 * a2) * ellip_E(x, p.k2) - ellip_F(x, p.k2)) / (12.0 * lam);
    r.secular_phase_error = std::max(r.secular_phase_error, std::abs(lhs - rhs));
  }
  return r;
}

SawtoothFit analyze_sawtooth(const std::vector<double>& eps, const std::vector<double>& nu, double alpha) {
  SawtoothFit fit;
  const std::size_t n = eps.size();
  constexpr std::size_t w = 8;
  auto line = [&](std::size_t lo, std::size_t hi, double& m, double& b) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double k = static_cast<double>(hi - lo);
    for (std::size_t i = lo; i < hi; ++i) {
      sx += eps[i];
      sy += nu[i];
      sxx += eps[i] * eps[i];
      sxy += eps[i] * nu[i];
    }
    m = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    b = (sy - m * sx) / k;
  };
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if ((nu[i] - nu[i - 1]) * (nu[i + 1] - nu[i]) >= 0.0) continue;
    double x = eps[i];
    if (i >= w + 1 && i + w + 1 < n) {
      double m1, b1, m2, b2;
      line(i - w - 1, i - 1, m1, b1);
      line(i + 2, i + w + 2, m2, b2);
      if (m1 != m2) x = (b2 - b1) / (m1 - m2);
    }
    fit.cusps.push_back(x);
  }
  if (fit.cusps.size() >= 2)
    fit.period = 2.0 * (fit.cusps.back() - fit.cusps.front()) / (fit.cusps.size() - 1);

  for (std::size_t i = 0; i < n; ++i)
    fit.fixed_law_residual = std::max(fit.fixed_law_residual, std::abs(nu[i] - wkb_sawtooth_value(eps[i], alpha)));

  if (fit.period <= 0.0) return fit;
  auto resid = [&](double phi) {
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = eps[i] / fit.period - phi;
      const double t = r - std::floor(r);
      worst = std::max(worst, std::abs(nu[i] - ((t <= 0.5) ? t : 1.0 - t)));
    }
    return worst;
  };
  constexpr int grid = 4000;
  double best = 0.0, bestv = INFINITY;
  for (int k = 0; k < grid; ++k) {
    const double phi = static_cast<double>(k) / grid;
    const double v = resid(phi);
    if (v < bestv) {
      bestv = v;
      best = phi;
    }
  }
  auto m = boost::math::tools::brent_find_minima(resid, best - 1.0 / grid, best + 1.0 / grid, 40);
  fit.phase = m.first - std::floor(m.first);
  fit.fit_residual = m.second;
  return fit;
}

}  // namespace tla
