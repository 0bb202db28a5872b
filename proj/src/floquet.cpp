#include "tla/floquet.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tla/errors.hpp"

namespace tla {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx I{0.0, 1.0};
constexpr int kJoin = 1;  // p0: index where the two minimal solutions are matched
constexpr double kNuFloor = 1e-14;

struct Coeffs {
  double nu, gamma, e2;  // e2 = eps^2 / 4
  double a(int p) const { return p + nu + 1.0; }
  double b(int p) const { return -((p + nu) * (p + nu) - e2) / gamma; }
  double c(int p) const { return p + nu - 1.0; }
};

// Modified Lentz for b0 + a1/(b1 + a2/(b2 + ...)) with b0 = 0.
template <class Term>
double lentz(Term term) {
  constexpr double tiny = 1e-300;
  double f = tiny, C = f, D = 0.0;
  for (int n = 1; n < 20000; ++n) {
    double an, bn;
    term(n, an, bn);
    D = bn + an * D;
    if (D == 0.0) D = tiny;
    C = bn + an / C;
    if (C == 0.0) C = tiny;
    D = 1.0 / D;
    const double delta = C * D;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) return f;
  }
  throw ConvergenceError("continued fraction did not converge", std::abs(f));
}

// F_p / F_{p-1} of the solution minimal as p -> +inf
double ratio_up(const Coeffs& k, int p) {
  return lentz([&](int n, double& an, double& bn) {
    if (n == 1) {
      an = -k.c(p);
    } else {
      an = -k.a(p + n - 2) * k.c(p + n - 1);
    }
    bn = k.b(p + n - 1);
  });
}

// F_p / F_{p+1} of the solution minimal as p -> -inf
double ratio_down(const Coeffs& k, int p) {
  return lentz([&](int n, double& an, double& bn) {
    if (n == 1) {
      an = -k.a(p);
    } else {
      an = -k.c(p - n + 2) * k.a(p - n + 1);
    }
    bn = k.b(p - n + 1);
  });
}

void rescale_if_big(std::vector<double>& y, double v) {
  if (std::abs(v) > 1e100)
    for (double& t : y) t *= 1e-100;
}

// Both minimal solutions on [-J-1, J+1]; index offset J+1.
struct MinimalPair {
  std::vector<double> plus, minus;
  int J;
  double& P(int p) { return plus[p + J + 1]; }
  double& M(int p) { return minus[p + J + 1]; }
};

MinimalPair minimal_pair(const Coeffs& k, int J) {
  MinimalPair m;
  m.J = J;
  m.plus.assign(2 * J + 3, 0.0);
  m.minus.assign(2 * J + 3, 0.0);
  m.P(J) = 1.0;
  m.P(J + 1) = ratio_up(k, J + 1);
  for (int p = J; p > kJoin; --p) {
    m.P(p - 1) = -(k.a(p) * m.P(p + 1) + k.b(p) * m.P(p)) / k.c(p);
    rescale_if_big(m.plus, m.P(p - 1));
  }
  m.M(-J) = 1.0;
  m.M(-J - 1) = ratio_down(k, -J - 1);
  for (int p = -J; p <= kJoin; ++p) {
    m.M(p + 1) = -(k.b(p) * m.M(p) + k.c(p) * m.M(p - 1)) / k.a(p);
    rescale_if_big(m.minus, m.M(p + 1));
  }
  return m;
}

double casoratian(MinimalPair& m) {
  const double a0 = m.P(kJoin), a1 = m.P(kJoin + 1);
  const double b0 = m.M(kJoin), b1 = m.M(kJoin + 1);
  return (a1 * b0 - a0 * b1) / (std::hypot(a0, a1) * std::hypot(b0, b1));
}

double recurrence_residual(const FloquetData& fd, double gamma, double epsilon) {
  const Coeffs k{fd.nu, gamma, 0.25 * epsilon * epsilon};
  double worst = 0.0;
  for (int p = -fd.J + 1; p < fd.J; ++p) {
    const double r = ((p + fd.nu) * (p + fd.nu) - k.e2) / gamma * fd.at(p) -
                     k.a(p) * fd.at(p + 1) - k.c(p) * fd.at(p - 1);
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

}  // namespace

MonodromyNu monodromy(const SolutionGrid& g) {
  const std::size_t nq = g.nodes_per_period / 4;
  if (g.size() < nq + 1) throw PreconditionError("monodromy needs a grid reaching pi/2");
  MonodromyNu m;
  m.s = g.epsilon * std::real(g.u[nq] * std::conj(g.v[nq]));
  const double a = std::abs(m.s);
  m.clamped = a > 1.0 + 1e-6;
  m.nu = std::asin(std::clamp(a, 0.0, 1.0)) / kPi;
  return m;
}

double nu_from_monodromy(const SolutionGrid& g) { return monodromy(g).nu; }

double nu_from_trace(const SolutionGrid& g) {
  const std::size_t n = g.nodes_per_period;
  if (g.size() < n + 1) throw PreconditionError("nu_from_trace needs a grid reaching 2 pi");
  return std::acos(std::clamp(g.u[n].real(), -1.0, 1.0)) / (2.0 * kPi);
}

int truncation_min(const ReducedParams& p) {
  return static_cast<int>(std::ceil(p.epsilon / 2.0 + 8.0 * p.gamma + 16.0));
}

double characteristic(const ReducedParams& p, double nu, int J) {
  const Coeffs k{nu, p.gamma, 0.25 * p.epsilon * p.epsilon};
  MinimalPair m = minimal_pair(k, J);
  return casoratian(m);
}

FloquetData analytic_free(const ReducedParams& p) {
  FloquetData fd;
  fd.analytic = true;
  const double h = 0.5 * p.epsilon;
  const double fl = std::floor(h);
  const double t = h - fl;
  int n;
  bool first_branch = t <= 0.5;
  if (first_branch) {
    fd.nu = t;
    n = static_cast<int>(fl);
  } else {
    fd.nu = 1.0 - t;
    n = static_cast<int>(fl) + 1;
  }
  fd.J = std::max(n, 1);
  fd.F.assign(2 * fd.J + 1, 0.0);
  if (first_branch) {
    fd.F[n + fd.J] = 1.0;
    fd.A = 1.0;
    fd.B = 0.0;
  } else {
    fd.F[-n + fd.J] = 1.0;
    fd.A = 0.0;
    fd.B = (n % 2 == 0) ? 1.0 : -1.0;
  }
  mode_sums(fd.F, fd.J, fd.M_e, fd.M_o);
  fd.orientation = 1;
  return fd;
}

FloquetData solve_recurrence(const ReducedParams& p, double nu_seed, int J) {
  if (p.gamma == 0.0)
    throw DegenerateError("gamma = 0: the recurrence is singular, use analytic_free");
  const int jmin = truncation_min(p);
  J = std::max(J, jmin);
  const int jcap = 4 * jmin + 64;
  nu_seed = std::clamp(nu_seed, kNuFloor, 0.5);

  for (;; J += 8) {
    if (J > jcap)
      throw ConvergenceError("Fourier tail did not decay below 1e-12 of the peak", J);
    FloquetData fd;
    fd.J = J;
    auto f = [&](double nu) { return characteristic(p, nu, J); };

    // Expand a bracket around the seed until the Casoratian changes sign.
    bool bracketed = false;
    double lo = 0.0, hi = 0.0, flo = 0.0, fhi = 0.0;
    for (double d = 1e-9; d < 1.0; d *= 4.0) {
      lo = std::max(nu_seed - d, kNuFloor);
      hi = std::min(nu_seed + d, 0.5);
      flo = f(lo);
      fhi = f(hi);
      if (flo == 0.0 || fhi == 0.0 || (flo < 0.0) != (fhi < 0.0)) {
        bracketed = true;
        break;
      }
      if (lo == kNuFloor && hi == 0.5) break;
    }
    if (bracketed) {
      if (flo == 0.0) {
        fd.nu = lo;
      } else if (fhi == 0.0) {
        fd.nu = hi;
      } else {
        boost::uintmax_t iters = 200;
        auto r = boost::math::tools::toms748_solve(
            f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(52), iters);
        fd.nu = 0.5 * (r.first + r.second);
      }
    } else {
      // Touching root at nu = 0 or 1/2 (coexistence): minimise |C| instead.
      lo = std::max(nu_seed - 1e-2, kNuFloor);
      hi = std::min(nu_seed + 1e-2, 0.5);
      auto r = boost::math::tools::brent_find_minima(
          [&](double nu) { return std::abs(f(nu)); }, lo, hi, 52);
      fd.nu = r.first;
      fd.warnings.push_back("no sign change of the characteristic function; nu from |C| minimum");
    }

    const Coeffs k{fd.nu, p.gamma, 0.25 * p.epsilon * p.epsilon};
    MinimalPair m = minimal_pair(k, J);
    // Splice: plus-solution for p >= p0, scaled minus-solution below.
    const double s = (std::abs(m.M(kJoin)) > std::abs(m.M(kJoin + 1)))
                         ? m.P(kJoin) / m.M(kJoin)
                         : m.P(kJoin + 1) / m.M(kJoin + 1);
    fd.F.assign(2 * J + 1, 0.0);
    for (int q = -J; q <= J; ++q) fd.F[q + J] = (q >= kJoin) ? m.P(q) : s * m.M(q);

    std::size_t imax = 0;
    for (std::size_t i = 0; i < fd.F.size(); ++i)
      if (std::abs(fd.F[i]) > std::abs(fd.F[imax])) imax = i;
    const double peak = fd.F[imax];
    double norm = 0.0;
    for (double& v : fd.F) {
      v /= peak;
      norm += v * v;
    }
    norm = std::sqrt(norm);
    for (double& v : fd.F) v /= norm;

    const double tail = std::max(std::abs(fd.F.front()), std::abs(fd.F.back()));
    if (!(tail <= 1e-12 * fd.F[imax])) continue;

    mode_sums(fd.F, J, fd.M_e, fd.M_o);
    fd.residual = recurrence_residual(fd, p.gamma, p.epsilon);
    return fd;
  }
}

void mode_sums(const std::vector<double>& F, int J, double& M_e, double& M_o) {
  M_e = 0.0;
  M_o = 0.0;
  for (int j = -J; j <= J; ++j) {
    if (j % 2 == 0)
      M_e += F[j + J];
    else
      M_o += F[j + J];
  }
}

namespace {

// The two Floquet branches at x and their x-derivatives.
void branches(const FloquetData& fd, double x, cplx& P, cplx& Q, cplx& Pp, cplx& Qp) {
  P = Q = Pp = Qp = 0.0;
  for (int j = -fd.J; j <= fd.J; ++j) {
    const double fp = fd.at(j);
    const double fm = ((j % 2 == 0) ? 1.0 : -1.0) * fd.at(-j);
    const double w1 = j + fd.nu, w2 = j - fd.nu;
    const cplx e1 = std::exp(I * (w1 * x)), e2 = std::exp(I * (w2 * x));
    P += fp * e1;
    Q += fm * e2;
    Pp += I * (w1 * fp) * e1;
    Qp += I * (w2 * fm) * e2;
  }
}

}  // namespace

cplx floquet_q(const FloquetData& fd, double x) {
  cplx P, Q, Pp, Qp;
  branches(fd, x, P, Q, Pp, Qp);
  return fd.A * P + fd.B * Q;
}

SuperpositionFit fit_superposition(const SolutionGrid& g, FloquetData& fd) {
  SuperpositionFit fit;
  cplx P0, Q0, Pp0, Qp0;
  branches(fd, 0.0, P0, Q0, Pp0, Qp0);
  Eigen::Matrix2cd M;
  M << P0, Q0, Pp0, Qp0;
  const Eigen::Vector2cd rhs(1.0, I * (0.5 * g.epsilon));
  Eigen::JacobiSVD<Eigen::Matrix2cd> svd(M);
  const double smin = svd.singularValues()(1), smax = svd.singularValues()(0);
  fit.condition = (smin > 0.0) ? smax / smin : INFINITY;

  const auto q = q_of_x(g);
  const double nu_gap = std::min(fd.nu, 0.5 - fd.nu);
  if (nu_gap < 1e-2 || fit.condition > 1e8) {
    fit.fallback = true;
    Eigen::MatrixX2cd G(g.size(), 2);
    Eigen::VectorXcd y(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
      cplx P, Q, Pp, Qp;
      branches(fd, g.x[k], P, Q, Pp, Qp);
      G(k, 0) = P;
      G(k, 1) = Q;
      y(k) = q[k];
    }
    const Eigen::Vector2cd ab = G.completeOrthogonalDecomposition().solve(y);
    fit.A = ab(0);
    fit.B = ab(1);
    std::ostringstream os;
    os << "superposition fit: nu = " << fd.nu << ", cond = " << fit.condition
       << "; least-squares fallback over the grid";
    fd.warnings.push_back(os.str());
  } else {
    const Eigen::Vector2cd ab = M.partialPivLu().solve(rhs);
    fit.A = ab(0);
    fit.B = ab(1);
  }
  fd.A = fit.A;
  fd.B = fit.B;

  // Which labelling of F the fit picked: (A, B) ~ (M_e, -M_o) or ~ (M_o, M_e).
  const cplx c1 = fit.A * (-fd.M_o) - fit.B * fd.M_e;
  const cplx c2 = fit.A * fd.M_e - fit.B * fd.M_o;
  fd.orientation = (std::abs(c1) <= std::abs(c2)) ? 1 : -1;

  for (std::size_t k = 0; k < g.size(); ++k)
    fit.reconstruction_error =
        std::max(fit.reconstruction_error, std::abs(floquet_q(fd, g.x[k]) - q[k]));
  return fit;
}

}  // namespace tla
