#pragma once

#include <complex>
#include <string>
#include <vector>

#include "tla/ode.hpp"
#include "tla/params.hpp"

namespace tla {

struct FloquetData {
  double nu = 0.0;
  int J = 0;               // F holds indices -J..J
  std::vector<double> F;   // F[j + J]
  double M_e = 0.0, M_o = 0.0;
  cplx A{0.0, 0.0}, B{0.0, 0.0};
  // +1 when (A, B) is parallel to (M_e, -M_o), -1 when parallel to
  // (M_o, M_e); 0 until fit_superposition has run.
  int orientation = 0;
  double residual = 0.0;   // recurrence residual, max over interior p
  bool analytic = false;   // gamma = 0 branch
  std::vector<std::string> warnings;

  double at(int j) const { return (j < -J || j > J) ? 0.0 : F[j + J]; }
};

struct MonodromyNu {
  double nu = 0.0;
  double s = 0.0;          // eps * Re[u(pi/2) v*(pi/2)]
  bool clamped = false;    // |s| exceeded 1 by more than 1e-6
};

MonodromyNu monodromy(const SolutionGrid& g);
double nu_from_monodromy(const SolutionGrid& g);
// (1/2pi) arccos Re u(2pi); needs a grid reaching 2 pi.
double nu_from_trace(const SolutionGrid& g);

int truncation_min(const ReducedParams& p);

// Normalised Casoratian of the two minimal solutions of the recurrence at
// exponent nu. Zero exactly at the Floquet exponent.
double characteristic(const ReducedParams& p, double nu, int J);

FloquetData solve_recurrence(const ReducedParams& p, double nu_seed, int J = 0);

// Closed form for gamma = 0: q = exp(i eps x / 2).
FloquetData analytic_free(const ReducedParams& p);

struct SuperpositionFit {
  cplx A, B;
  bool fallback = false;     // least squares over the grid was used
  double condition = 0.0;    // of the 2x2 initial-value system
  double reconstruction_error = 0.0;  // L-infinity over the grid
};

// Fix A, B from q(0) = 1, q'(0) = i eps/2 and write them (plus the
// orientation sign) back into fd.
SuperpositionFit fit_superposition(const SolutionGrid& g, FloquetData& fd);

// q from the Floquet expansion at arbitrary x.
cplx floquet_q(const FloquetData& fd, double x);

void mode_sums(const std::vector<double>& F, int J, double& M_e, double& M_o);

}  // namespace tla
