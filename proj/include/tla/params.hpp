#pragma once

namespace tla {

// Frequencies in rad/s.
struct PhysicalParams {
  double omega0 = 0.0;  // atomic transition
  double omega = 0.0;   // laser
  double rabi = 0.0;    // Rabi frequency Omega_0
};

// Dimensionless drive parameters plus the constants the WKB formulas use.
// Build through the factories so the derived fields stay consistent.
struct ReducedParams {
  double gamma = 0.0;    // Omega_0 / omega
  double epsilon = 1.0;  // omega0 / omega
  double alpha = 0.0;    // gamma / epsilon
  double lambda = 1.0;   // sqrt(1 + 4 alpha^2)
  double k2 = 0.0;       // 4 alpha^2 / lambda^2
  double epsilon0 = 1.0; // half-period of the sawtooth nu(epsilon)

  static ReducedParams from_gamma(double gamma, double epsilon);
  // gamma is then alpha * epsilon exactly.
  static ReducedParams from_alpha(double alpha, double epsilon);
};

ReducedParams reduce(const PhysicalParams& p);

double epsilon_zero(double alpha);

// Epsilon at which the WKB winding Omega(epsilon, alpha) equals r.
double select_epsilon(double r, double alpha);

}  // namespace tla
