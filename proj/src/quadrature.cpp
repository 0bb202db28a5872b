#include "tla/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>

namespace tla {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 31>;

// Bisect until the Kronrod-Gauss difference of each piece meets its share
// of the absolute tolerance. Boost's own driver is relative to the L1 norm,
// which never terminates on integrands that are zero up to rounding.
// A piece whose error is already at rounding level of its L1 is accepted.
double adapt(const RealFn& f, double a, double b, double tol, int depth) {
  double err = 0.0, l1 = 0.0;
  const double v = GK::integrate(f, a, b, 0, 0.0, &err, &l1);
  if (err <= tol || err <= 64 * std::numeric_limits<double>::epsilon() * l1 || depth >= 10)
    return v;
  const double m = 0.5 * (a + b);
  return adapt(f, a, m, 0.5 * tol, depth + 1) + adapt(f, m, b, 0.5 * tol, depth + 1);
}

}  // namespace

double integrate(const RealFn& f, double a, double b, double abs_tol) {
  if (a == b) return 0.0;
  return adapt(f, a, b, std::max(abs_tol, 1e-16), 0);
}

double integrate_panels(const RealFn& f, double a, double b, double max_panel,
                        double abs_tol) {
  const int n = std::max(1, static_cast<int>(std::ceil((b - a) / max_panel)));
  const double h = (b - a) / n;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double lo = a + i * h;
    const double hi = (i + 1 == n) ? b : lo + h;
    sum += integrate(f, lo, hi, abs_tol / n);
  }
  return sum;
}

}  // namespace tla
