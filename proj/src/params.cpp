#include "tla/params.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "tla/elliptic.hpp"
#include "tla/errors.hpp"

namespace tla {

namespace {

ReducedParams fill(double gamma, double epsilon, double alpha) {
  ReducedParams r;
  r.gamma = gamma;
  r.epsilon = epsilon;
  r.alpha = alpha;
  r.lambda = std::sqrt(1.0 + 4.0 * alpha * alpha);
  r.k2 = 4.0 * alpha * alpha / (r.lambda * r.lambda);
  r.epsilon0 = std::numbers::pi / (2.0 * r.lambda * ellip_Ecomp(r.k2));
  return r;
}

void require(bool ok, const char* field, double value, const char* rule) {
  if (ok) return;
  std::ostringstream os;
  os << field << " = " << value << " must be " << rule;
  throw DomainError(os.str());
}

}  // namespace

ReducedParams ReducedParams::from_gamma(double gamma, double epsilon) {
  require(std::isfinite(epsilon) && epsilon > 0.0, "epsilon", epsilon, "> 0");
  require(std::isfinite(gamma) && gamma >= 0.0, "gamma", gamma, ">= 0");
  return fill(gamma, epsilon, gamma / epsilon);
}

ReducedParams ReducedParams::from_alpha(double alpha, double epsilon) {
  require(std::isfinite(epsilon) && epsilon > 0.0, "epsilon", epsilon, "> 0");
  require(std::isfinite(alpha) && alpha >= 0.0, "alpha", alpha, ">= 0");
  return fill(alpha * epsilon, epsilon, alpha);
}

ReducedParams reduce(const PhysicalParams& p) {
  require(std::isfinite(p.omega) && p.omega > 0.0, "omega", p.omega, "> 0");
  require(std::isfinite(p.omega0) && p.omega0 > 0.0, "omega0", p.omega0, "> 0");
  require(std::isfinite(p.rabi) && p.rabi >= 0.0, "rabi", p.rabi, ">= 0");
  return ReducedParams::from_gamma(p.rabi / p.omega, p.omega0 / p.omega);
}

double epsilon_zero(double alpha) {
  require(alpha >= 0.0, "alpha", alpha, ">= 0");
  const double lam = std::sqrt(1.0 + 4.0 * alpha * alpha);
  return std::numbers::pi / (2.0 * lam * ellip_Ecomp(4.0 * alpha * alpha / (lam * lam)));
}

// Omega = (1/pi)(eps*lam*E + c/(6 eps lam)) with c = (1+8a^2)E - K is a
// quadratic in eps; take the large root.
double select_epsilon(double r, double alpha) {
  require(r > 0.0, "r", r, "> 0");
  require(alpha >= 0.0, "alpha", alpha, ">= 0");
  const double lam = std::sqrt(1.0 + 4.0 * alpha * alpha);
  const double m = 4.0 * alpha * alpha / (lam * lam);
  const double E = ellip_Ecomp(m), K = ellip_K(m);
  const double c = (1.0 + 8.0 * alpha * alpha) * E - K;
  const double pi = std::numbers::pi;
  const double disc = 1.0 - 2.0 * E * c / (3.0 * r * r * pi * pi);
  if (disc < 0.0) {
    std::ostringstream os;
    os << "select_epsilon: negative discriminant " << disc << " at r = " << r
       << ", alpha = " << alpha;
    throw DomainError(os.str());
  }
  return r * pi * (1.0 + std::sqrt(disc)) / (2.0 * lam * E);
}

}  // namespace tla
