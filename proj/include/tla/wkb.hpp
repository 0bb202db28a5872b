#pragma once

#include <utility>
#include <vector>

#include "tla/ode.hpp"
#include "tla/params.hpp"
#include "tla/spectrum.hpp"

namespace tla {

inline constexpr double kWkbEpsilonMin = 5.0;

// Large-epsilon closed forms. psi(x) is twice the argument of the WKB
// phase factor; it gains 2 pi Omega per half period.
class WkbSolution {
 public:
  explicit WkbSolution(const ReducedParams& p);

  const ReducedParams& params() const { return p_; }
  bool valid() const { return p_.epsilon >= kWkbEpsilonMin; }

  double psi(double x) const;
  cplx phase(double x) const;  // exp(i psi / 2)
  cplx f1(double x) const;
  cplx f2(double x) const;
  std::pair<cplx, cplx> uv(double x) const;

  double delta1(double x) const;
  double delta2(double x) const;
  double pi1(double x) const;
  double pi2(double x) const;

  double omega() const { return omega_; }
  double nu() const;
  // The formula taken literally, arcsin|sin Omega| (radians).
  double nu_literal() const;

 private:
  double s(double x) const;
  ReducedParams p_;
  double E_, K_, omega_;
};

cplx wkb_phase(double x, const ReducedParams& p);
std::pair<cplx, cplx> wkb_uv(double x, const ReducedParams& p);
double wkb_omega(const ReducedParams& p);
double wkb_nu(const ReducedParams& p);

double wkb_delta1(double x, double alpha);
double wkb_pi1(double x, double alpha);
double wkb_delta2(double x, const ReducedParams& p);
double wkb_pi2(double x, const ReducedParams& p);

// Leading-order sawtooth: nu = t or 1 - t with t = frac(eps / 2 eps0).
double wkb_sawtooth_value(double epsilon, double alpha);
std::vector<std::pair<double, double>> wkb_sawtooth(const std::vector<double>& epsilons, double alpha);

// First odd harmonic in closed form (complete integrals only).
double wkb_first_harmonic_closed(double alpha);

// Which hyper-Raman sign applies: +1 when Omega + nu is an integer,
// -1 when Omega - nu is. Throws IntegralityError otherwise.
int wkb_sign_rule(const ReducedParams& p, double tol = 1e-6);

Lines wkb_dipole_amps(const ReducedParams& p, int j_max, double abs_tol = 1e-8);
Lines wkb_inversion_amps(const ReducedParams& p, int j_max, double abs_tol = 1e-8);

ComponentSplit wkb_split(const ReducedParams& p);

struct HierarchyReport {
  int order = 0;
  double z0_residual = 0.0;            // z0'^2 + (1 + 4a^2 cos^2 x)/4
  double leading_phase_error = 0.0;    // int Im z0' - (lambda/2) E[x]
  double z1_residual = 0.0;            // 2 z0' z1' + z0'' - i a sin x
  double printed_z1_gap = 0.0;         // max |z1' - (-z0''/(2 z0'))|
  double amplitude_error = 0.0;        // exp(int z1') against the f1 prefactor
  double secular_phase_error = 0.0;    // int_0^{n pi} Im z2' against the 1/(12 eps lambda) term
};

HierarchyReport wkb_hierarchy_check(const ReducedParams& p, int order);

// Cusp and period analysis of a sampled nu(epsilon) curve.
struct SawtoothFit {
  std::vector<double> cusps;     // refined locations of the extrema
  double period = 0.0;           // 2 x mean cusp spacing
  double phase = 0.0;            // fitted offset, in periods
  double fit_residual = 0.0;     // max |nu - triangle(eps; period, phase)|
  double fixed_law_residual = 0.0;  // against the phase-free leading law
};

SawtoothFit analyze_sawtooth(const std::vector<double>& eps, const std::vector<double>& nu,
                             double alpha);

}  // namespace tla
