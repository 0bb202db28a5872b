#pragma once

#include <complex>
#include <vector>

#include "tla/params.hpp"

namespace tla {

using cplx = std::complex<double>;

struct StepControl {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
};

// Values of the fundamental pair at the two points the symmetry
// extension is built from.
struct ExtensionBasis {
  cplx u_half, v_half, up_half, vp_half;  // x = pi/2
  cplx u_pi, v_pi, up_pi, vp_pi;          // x = pi
};

// u, v solve q'' - 2i gamma cos x q' + (eps^2/4) q = 0 with
// u(0)=1, u'(0)=0, v(0)=0, v'(0)=1, sampled on x_k = k*h.
struct SolutionGrid {
  double gamma = 0.0;
  double epsilon = 0.0;
  int nodes_per_period = 0;  // h = 2 pi / nodes_per_period
  std::vector<double> x;
  std::vector<cplx> u, v, up, vp;
  bool extended = false;
  ExtensionBasis basis{};
  double first_integral_dev = 0.0;  // max | |u|^2 + eps^2/4 |v|^2 - 1 |

  double step() const;
  std::size_t size() const { return x.size(); }
};

struct BlochSeries {
  std::vector<double> x;
  std::vector<double> D, W;
  std::vector<double> D_prime, W_prime;  // analytic x-derivatives
};

struct BlochResiduals {
  double dipole = 0.0;     // D'' + eps^2 D - 2 eps gamma cos x W
  double inversion = 0.0;  // W' + (2 gamma/eps) cos x D'
  double energy = 0.0;     // D'^2 + eps^2 (D^2 + W^2) - eps^2
};

// Integrate on [0, x_end]; x_end must land on a node. Default is the
// quarter period, which is all extend_solution needs.
SolutionGrid integrate_uv(const ReducedParams& p, int nodes_per_period = 2048,
                          const StepControl& ctl = {}, double x_end = -1.0);
// Same with raw coefficients; lets tests reach epsilon = 0.
SolutionGrid integrate_uv_raw(double gamma, double epsilon, int nodes_per_period,
                              const StepControl& ctl, double x_end);

// Extend a quarter-period grid to [0, x_max] with the reflection and
// half-period shift identities.
SolutionGrid extend_solution(const SolutionGrid& quarter, double x_max);

std::vector<cplx> q_of_x(const SolutionGrid& g);
std::vector<cplx> q_prime_of_x(const SolutionGrid& g);

BlochSeries dipole_inversion(const SolutionGrid& g);

BlochResiduals bloch_residuals(const BlochSeries& s, double gamma, double epsilon);

// Largest violation of u' = -(eps^2/4) e^{2i gamma sin x} v*, v' = e^{2i gamma sin x} u*.
double derivative_relation_residual(const SolutionGrid& g);

}  // namespace tla
