#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tla/elliptic.hpp"
#include "tla/errors.hpp"
#include "tla/params.hpp"
#include "tla/wkb.hpp"

using namespace tla;

TEST_SUITE("params") {

TEST_CASE("reduction of physical frequencies") {
  const ReducedParams r = reduce({2.0e15, 1.0e15, 3.0e15});
  CHECK(r.epsilon == doctest::Approx(2.0));
  CHECK(r.gamma == doctest::Approx(3.0));
  CHECK(r.alpha == doctest::Approx(1.5));
  CHECK(r.lambda == doctest::Approx(std::sqrt(1 + 4 * 2.25)));
  CHECK(r.k2 == doctest::Approx(9.0 / 10.0));
}

TEST_CASE("factories agree") {
  const ReducedParams a = ReducedParams::from_alpha(1.0, 10.0);
  const ReducedParams g = ReducedParams::from_gamma(10.0, 10.0);
  CHECK(a.gamma == 10.0);
  CHECK(a.alpha == g.alpha);
  CHECK(a.lambda == g.lambda);
  CHECK(a.k2 == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(a.epsilon0 == g.epsilon0);
}

TEST_CASE("rejects bad values") {
  CHECK_THROWS_AS(ReducedParams::from_gamma(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(ReducedParams::from_gamma(-1.0, 1.0), DomainError);
  CHECK_THROWS_AS(ReducedParams::from_alpha(NAN, 1.0), DomainError);
  CHECK_THROWS_AS(reduce({1.0, 0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(reduce({1.0, 1.0, -1.0}), DomainError);
  CHECK_THROWS_AS(select_epsilon(-1.0, 1.0), DomainError);
}

TEST_CASE("epsilon_zero value and limits") {
  CHECK(std::abs(epsilon_zero(1.0) - 0.596086) <= 1e-5);
  // alpha = 0: lambda = 1, E = pi/2, so eps0 = 1
  CHECK(epsilon_zero(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  // independent evaluation at alpha = 1 from the complete integral
  CHECK(epsilon_zero(1.0) ==
        doctest::Approx(std::numbers::pi / (2 * std::sqrt(5.0) * ellip_Ecomp(0.8))).epsilon(1e-15));
  // monotone decreasing in alpha
  double prev = epsilon_zero(0.0);
  for (double a = 0.25; a <= 4.0; a += 0.25) {
    const double e = epsilon_zero(a);
    CHECK(e < prev);
    prev = e;
  }
}

TEST_CASE("select_epsilon inverts the winding number") {
  for (double alpha : {0.0, 0.5, 1.0, 2.0})
    for (double r : {3.0, 5.0, 17.0}) {
      const double e = select_epsilon(r, alpha);
      CHECK(wkb_omega(ReducedParams::from_alpha(alpha, e)) == doctest::Approx(r).epsilon(1e-12));
    }
  // alpha = 0: E = K so the correction term vanishes and Omega = eps/2
  CHECK(select_epsilon(4.0, 0.0) == doctest::Approx(8.0).epsilon(1e-15));
}

}
