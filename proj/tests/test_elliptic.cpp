#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "tla/elliptic.hpp"
#include "tla/errors.hpp"

using namespace tla;
using boost::math::quadrature::gauss_kronrod;

namespace {

constexpr double kPi = std::numbers::pi;

// Oracles: the defining integrands, integrated directly.
double F_oracle(double x, double m) {
  auto f = [m](double t) { return 1.0 / std::sqrt(1.0 - m * std::sin(t) * std::sin(t)); };
  return gauss_kronrod<double, 61>::integrate(f, 0.0, x, 15, 1e-15);
}
double E_oracle(double x, double m) {
  auto f = [m](double t) { return std::sqrt(1.0 - m * std::sin(t) * std::sin(t)); };
  return gauss_kronrod<double, 61>::integrate(f, 0.0, x, 15, 1e-15);
}

}  // namespace

TEST_SUITE("elliptic") {

TEST_CASE("complete integrals against quadrature") {
  for (double m : {0.0, 0.1, 0.5, 0.8, 0.94117647, 0.99}) {
    CHECK(ellip_K(m) == doctest::Approx(F_oracle(kPi / 2, m)).epsilon(1e-13));
    CHECK(ellip_Ecomp(m) == doctest::Approx(E_oracle(kPi / 2, m)).epsilon(1e-13));
  }
  CHECK(ellip_K(0.0) == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(ellip_Ecomp(0.0) == doctest::Approx(kPi / 2).epsilon(1e-15));
}

TEST_CASE("Legendre relation at m = 1/2") {
  // 2EK - K^2 = pi/2 when m = m' = 1/2
  const double K = ellip_K(0.5), E = ellip_Ecomp(0.5);
  CHECK(2 * E * K - K * K == doctest::Approx(kPi / 2).epsilon(1e-14));
}

TEST_CASE("incomplete integrals against quadrature, several periods") {
  for (double m : {0.2, 0.8, 0.97})
    for (double x : {0.1, 0.7, 1.5, 2.9, 4.0, 7.3, 13.0}) {
      CHECK(ellip_F(x, m) == doctest::Approx(F_oracle(x, m)).epsilon(1e-12));
      CHECK(ellip_E(x, m) == doctest::Approx(E_oracle(x, m)).epsilon(1e-12));
    }
}

TEST_CASE("oddness and quasi-periodicity") {
  const double m = 0.8;
  for (double x : {0.3, 1.2, 2.5}) {
    CHECK(ellip_F(-x, m) == doctest::Approx(-ellip_F(x, m)).epsilon(1e-15));
    CHECK(ellip_E(-x, m) == doctest::Approx(-ellip_E(x, m)).epsilon(1e-15));
    CHECK(ellip_F(x + kPi, m) == doctest::Approx(ellip_F(x, m) + 2 * ellip_K(m)).epsilon(1e-14));
    CHECK(ellip_E(x + 2 * kPi, m) == doctest::Approx(ellip_E(x, m) + 4 * ellip_Ecomp(m)).epsilon(1e-14));
  }
  CHECK(ellip_F(0.0, m) == 0.0);
  CHECK(ellip_E(kPi / 2, m) == doctest::Approx(ellip_Ecomp(m)).epsilon(1e-15));
}

TEST_CASE("m = 0 reduces to the amplitude") {
  for (double x : {0.4, 2.0, 5.5}) {
    CHECK(ellip_F(x, 0.0) == doctest::Approx(x).epsilon(1e-15));
    CHECK(ellip_E(x, 0.0) == doctest::Approx(x).epsilon(1e-15));
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(ellip_K(1.0), DomainError);
  CHECK_THROWS_AS(ellip_K(-0.1), DomainError);
  CHECK_THROWS_AS(ellip_Ecomp(1.5), DomainError);
  CHECK_THROWS_AS(ellip_F(0.5, 1.2), DomainError);
  CHECK_THROWS_AS(ellip_E(0.5, -1.0), DomainError);
}

TEST_CASE("Carlson forms at known points") {
  // R_F(x,x,x) = 1/sqrt(x), R_D(x,x,x) = x^(-3/2)
  CHECK(carlson_rf(2.0, 2.0, 2.0) == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(carlson_rd(3.0, 3.0, 3.0) == doctest::Approx(std::pow(3.0, -1.5)).epsilon(1e-15));
  // R_F(0,1,2) = 1.3110287771461 (lemniscate-type constant)
  CHECK(carlson_rf(0.0, 1.0, 2.0) == doctest::Approx(1.3110287771461).epsilon(1e-12));
}

}
