#include "tla/ode.hpp"

#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tla/errors.hpp"

namespace tla {

namespace odeint = boost::numeric::odeint;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx I{0.0, 1.0};

// (u, u', v, v') split into real and imaginary parts.
using State = std::array<double, 8>;

int node_count_for(double x_end, double h) {
  const double n = std::nearbyint(x_end / h);
  if (std::abs(n * h - x_end) > 1e-9 * std::max(1.0, x_end)) {
    std::ostringstream os;
    os << "x_end = " << x_end << " is not on the node lattice (h = " << h << ")";
    throw PreconditionError(os.str());
  }
  return static_cast<int>(n);
}

double first_integral_dev(const SolutionGrid& g) {
  const double e2 = 0.25 * g.epsilon * g.epsilon;
  double worst = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k)
    worst = std::max(worst, std::abs(std::norm(g.u[k]) + e2 * std::norm(g.v[k]) - 1.0));
  return worst;
}

}  // namespace

double SolutionGrid::step() const { return 2.0 * kPi / nodes_per_period; }

SolutionGrid integrate_uv(const ReducedParams& p, int nodes_per_period,
                          const StepControl& ctl, double x_end) {
  return integrate_uv_raw(p.gamma, p.epsilon, nodes_per_period, ctl, x_end);
}

SolutionGrid integrate_uv_raw(double gamma, double epsilon, int nodes_per_period,
                              const StepControl& ctl, double x_end) {
  if (nodes_per_period < 8 || nodes_per_period % 4 != 0)
    throw PreconditionError("nodes_per_period must be a positive multiple of 4 (>= 8)");
  if (!(ctl.abs_tol > 0.0) || !(ctl.rel_tol > 0.0))
    throw PreconditionError("integration tolerances must be positive");
  if (!(epsilon >= 0.0) || !(gamma >= 0.0))
    throw DomainError("integrate_uv: gamma and epsilon must be non-negative");

  SolutionGrid g;
  g.gamma = gamma;
  g.epsilon = epsilon;
  g.nodes_per_period = nodes_per_period;
  const double h = g.step();
  const int n = (x_end < 0.0) ? nodes_per_period / 4 : node_count_for(x_end, h);

  std::vector<double> times(n + 1);
  for (int k = 0; k <= n; ++k) times[k] = k * (2.0 * kPi) / nodes_per_period;
  g.x = times;
  g.u.resize(n + 1);
  g.up.resize(n + 1);
  g.v.resize(n + 1);
  g.vp.resize(n + 1);

  const double e2 = 0.25 * epsilon * epsilon;
  auto rhs = [gamma, e2](const State& s, State& ds, double x) {
    // q'' = 2i gamma cos x q' - eps^2/4 q, for both columns
    const double c = 2.0 * gamma * std::cos(x);
    for (int col = 0; col < 2; ++col) {
      const int o = 4 * col;
      ds[o + 0] = s[o + 2];
      ds[o + 1] = s[o + 3];
      ds[o + 2] = -c * s[o + 3] - e2 * s[o + 0];
      ds[o + 3] = c * s[o + 2] - e2 * s[o + 1];
    }
  };

  State s0{1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0};
  double last_x = 0.0;
  auto observe = [&](const State& s, double x) {
    const auto k = static_cast<std::size_t>(std::nearbyint(x / h));
    g.u[k] = {s[0], s[1]};
    g.up[k] = {s[2], s[3]};
    g.v[k] = {s[4], s[5]};
    g.vp[k] = {s[6], s[7]};
    last_x = x;
  };

  auto stepper = odeint::make_controlled(ctl.abs_tol, ctl.rel_tol,
                                         odeint::runge_kutta_fehlberg78<State>());
  try {
    odeint::integrate_times(stepper, rhs, s0, times.begin(), times.end(), h / 4, observe,
                            odeint::max_step_checker(1000000));
  } catch (const std::exception& e) {
    std::ostringstream os;
    os << "integration failed after x = " << last_x << ": " << e.what();
    throw IntegrationError(os.str(), last_x);
  }
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!std::isfinite(g.u[k].real()) || !std::isfinite(g.v[k].real()))
      throw IntegrationError("non-finite solution value", g.x[k]);
  }
  g.first_integral_dev = first_integral_dev(g);
  return g;
}

SolutionGrid extend_solution(const SolutionGrid& quarter, double x_max) {
  const int N = quarter.nodes_per_period;
  const int nq = N / 4;
  if (N % 4 != 0 || static_cast<int>(quarter.size()) < nq + 1)
    throw PreconditionError("extend_solution needs a grid reaching x = pi/2");
  const double h = quarter.step();
  const int n = node_count_for(x_max, h);
  const int nh = N / 2;

  SolutionGrid g;
  g.gamma = quarter.gamma;
  g.epsilon = quarter.epsilon;
  g.nodes_per_period = N;
  g.extended = true;
  g.x.resize(n + 1);
  for (int k = 0; k <= n; ++k) g.x[k] = k * (2.0 * kPi) / N;
  const int m = std::max(n, nh);
  g.u.resize(m + 1);
  g.up.resize(m + 1);
  g.v.resize(m + 1);
  g.vp.resize(m + 1);
  for (int k = 0; k <= nq; ++k) {
    g.u[k] = quarter.u[k];
    g.up[k] = quarter.up[k];
    g.v[k] = quarter.v[k];
    g.vp[k] = quarter.vp[k];
  }

  // q(pi - x) solves the same equation, so Y(pi - t) = S Y(t) C with
  // S = diag(1, -1) and C = Y(pi/2)^{-1} S Y(pi/2).
  const cplx a = quarter.u[nq], b = quarter.v[nq], c = quarter.up[nq], d = quarter.vp[nq];
  const cplx det = a * d - b * c;
  // Y^{-1} = [d -b; -c a]/det ; S Y = [a b; -c -d]
  const cplx C00 = (d * a + b * c) / det;
  const cplx C01 = (d * b + b * d) / det;
  const cplx C10 = (-c * a - a * c) / det;
  const cplx C11 = (-c * b - a * d) / det;

  for (int k = nq + 1; k <= nh; ++k) {
    const int t = nh - k;
    g.u[k] = g.u[t] * C00 + g.v[t] * C10;
    g.v[k] = g.u[t] * C01 + g.v[t] * C11;
    g.up[k] = -(g.up[t] * C00 + g.vp[t] * C10);
    g.vp[k] = -(g.up[t] * C01 + g.vp[t] * C11);
  }

  ExtensionBasis& B = g.basis;
  B.u_half = a;
  B.v_half = b;
  B.up_half = c;
  B.vp_half = d;
  B.u_pi = g.u[nh];
  B.v_pi = g.v[nh];
  B.up_pi = g.up[nh];
  B.vp_pi = g.vp[nh];

  // Over half a period the equation turns into its complex conjugate:
  // Y(x + pi) = conj(Y(x)) Y(pi).
  for (int k = nh + 1; k <= n; ++k) {
    const int t = k - nh;
    const cplx u = std::conj(g.u[t]), v = std::conj(g.v[t]);
    const cplx up = std::conj(g.up[t]), vp = std::conj(g.vp[t]);
    g.u[k] = B.u_pi * u + B.up_pi * v;
    g.v[k] = B.v_pi * u + B.vp_pi * v;
    g.up[k] = B.u_pi * up + B.up_pi * vp;
    g.vp[k] = B.v_pi * up + B.vp_pi * vp;
  }
  g.u.resize(n + 1);
  g.up.resize(n + 1);
  g.v.resize(n + 1);
  g.vp.resize(n + 1);
  g.first_integral_dev = first_integral_dev(g);
  return g;
}

std::vector<cplx> q_of_x(const SolutionGrid& g) {
  std::vector<cplx> q(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) q[k] = g.u[k] + I * (0.5 * g.epsilon) * g.v[k];
  return q;
}

std::vector<cplx> q_prime_of_x(const SolutionGrid& g) {
  std::vector<cplx> q(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) q[k] = g.up[k] + I * (0.5 * g.epsilon) * g.vp[k];
  return q;
}

BlochSeries dipole_inversion(const SolutionGrid& g) {
  BlochSeries s;
  const std::size_t n = g.size();
  s.x = g.x;
  s.D.resize(n);
  s.W.resize(n);
  s.D_prime.resize(n);
  s.W_prime.resize(n);
  const double eps = g.epsilon, e2 = 0.25 * eps * eps;
  for (std::size_t k = 0; k < n; ++k) {
    const cplx u = g.u[k], v = g.v[k], up = g.up[k], vp = g.vp[k];
    const double x = g.x[k];
    const cplx ph = std::exp(-2.0 * I * g.gamma * std::sin(x));
    const cplx S = u * u + e2 * v * v;
    const cplx Sp = 2.0 * u * up + 2.0 * e2 * v * vp;
    s.D[k] = eps * std::imag(u * std::conj(v));
    s.D_prime[k] = eps * std::imag(up * std::conj(v) + u * std::conj(vp));
    s.W[k] = -std::real(ph * S);
    s.W_prime[k] = -std::real(ph * (Sp - 2.0 * I * g.gamma * std::cos(x) * S));
  }
  return s;
}

BlochResiduals bloch_residuals(const BlochSeries& s, double gamma, double epsilon) {
  BlochResiduals r;
  const std::size_t n = s.x.size();
  const double e2 = epsilon * epsilon;
  for (std::size_t k = 0; k < n; ++k) {
    const double c = std::cos(s.x[k]);
    r.inversion = std::max(r.inversion, std::abs(s.W_prime[k] + 2.0 * gamma / epsilon * c * s.D_prime[k]));
    const double dp = s.D_prime[k];
    r.energy = std::max(r.energy, std::abs(dp * dp + e2 * (s.D[k] * s.D[k] + s.W[k] * s.W[k]) - e2));
  }
  if (n < 7) return r;
  // sixth-order central difference of the analytic D'
  static constexpr double w[7] = {-1.0 / 60, 3.0 / 20, -3.0 / 4, 0.0, 3.0 / 4, -3.0 / 20, 1.0 / 60};
  const double h = s.x[1] - s.x[0];
  for (std::size_t k = 3; k + 3 < n; ++k) {
    double dpp = 0.0;
    for (int i = 0; i < 7; ++i) dpp += w[i] * s.D_prime[k + i - 3];
    dpp /= h;
    const double res = dpp + e2 * s.D[k] - 2.0 * epsilon * gamma * std::cos(s.x[k]) * s.W[k];
    r.dipole = std::max(r.dipole, std::abs(res));
  }
  return r;
}

double derivative_relation_residual(const SolutionGrid& g) {
  const double e2 = 0.25 * g.epsilon * g.epsilon;
  double worst = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const cplx ph = std::exp(2.0 * I * g.gamma * std::sin(g.x[k]));
    worst = std::max(worst, std::abs(g.up[k] + e2 * ph * std::conj(g.v[k])));
    worst = std::max(worst, std::abs(g.vp[k] - ph * std::conj(g.u[k])));
  }
  return worst;
}

}  // namespace tla
