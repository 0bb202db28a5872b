#include "tla/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tla/errors.hpp"

namespace tla {

namespace {

// Duplication stops once all relative spreads are below this; the
// truncated fifth-order series then leaves an error ~ tol^6.
constexpr double kErrTol = 8e-4;

void check_m(double m, double limit) {
  if (!(m >= 0.0) || !(m < limit)) {
    std::ostringstream os;
    os << "elliptic parameter m = " << m << " outside [0, " << limit << ")";
    throw DomainError(os.str());
  }
}

}  // namespace

double carlson_rf(double x, double y, double z) {
  double ave, dx, dy, dz;
  for (;;) {
    const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    const double lam = sx * (sy + sz) + sy * sz;
    x = 0.25 * (x + lam);
    y = 0.25 * (y + lam);
    z = 0.25 * (z + lam);
    ave = (x + y + z) / 3.0;
    dx = (ave - x) / ave;
    dy = (ave - y) / ave;
    dz = (ave - z) / ave;
    if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) < kErrTol) break;
  }
  const double e2 = dx * dy - dz * dz;
  const double e3 = dx * dy * dz;
  return (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) / std::sqrt(ave);
}

double carlson_rd(double x, double y, double z) {
  double sum = 0.0, fac = 1.0;
  double ave, dx, dy, dz;
  for (;;) {
    const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    const double lam = sx * (sy + sz) + sy * sz;
    sum += fac / (sz * (z + lam));
    fac *= 0.25;
    x = 0.25 * (x + lam);
    y = 0.25 * (y + lam);
    z = 0.25 * (z + lam);
    ave = 0.2 * (x + y + 3.0 * z);
    dx = (ave - x) / ave;
    dy = (ave - y) / ave;
    dz = (ave - z) / ave;
    if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) < kErrTol) break;
  }
  constexpr double c1 = 3.0 / 14.0, c2 = 1.0 / 6.0, c3 = 9.0 / 22.0, c4 = 3.0 / 26.0;
  constexpr double c5 = 0.25 * c3, c6 = 1.5 * c4;
  const double ea = dx * dy, eb = dz * dz;
  const double ec = ea - eb, ed = ea - 6.0 * eb, ee = ed + ec + ec;
  return 3.0 * sum +
         fac * (1.0 + ed * (-c1 + c5 * ed - c6 * dz * ee) +
                dz * (c2 * ee + dz * (-c3 * ec + dz * c4 * ea))) /
             (ave * std::sqrt(ave));
}

double ellip_K(double m) {
  check_m(m, 1.0 - 1e-12);
  return carlson_rf(0.0, 1.0 - m, 1.0);
}

double ellip_Ecomp(double m) {
  check_m(m, 1.0 - 1e-12);
  return carlson_rf(0.0, 1.0 - m, 1.0) - m / 3.0 * carlson_rd(0.0, 1.0 - m, 1.0);
}

namespace {

// Reduce x = n*pi + r with r in [-pi/2, pi/2].
void reduce_amplitude(double x, double& n, double& r) {
  n = std::nearbyint(x / std::numbers::pi);
  r = x - n * std::numbers::pi;
}

}  // namespace

double ellip_F(double x, double m) {
  check_m(m, 1.0);
  double n, r;
  reduce_amplitude(x, n, r);
  const double s = std::sin(r), c = std::cos(r);
  double val = s * carlson_rf(c * c, 1.0 - m * s * s, 1.0);
  if (n != 0.0) val += 2.0 * n * ellip_K(m);
  return val;
}

double ellip_E(double x, double m) {
  check_m(m, 1.0);
  double n, r;
  reduce_amplitude(x, n, r);
  const double s = std::sin(r), c = std::cos(r);
  const double cc = c * c, d = 1.0 - m * s * s;
  double val = s * carlson_rf(cc, d, 1.0) - m / 3.0 * s * s * s * carlson_rd(cc, d, 1.0);
  if (n != 0.0) val += 2.0 * n * ellip_Ecomp(m);
  return val;
}

}  // namespace tla
