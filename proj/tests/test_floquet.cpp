#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tla/errors.hpp"
#include "tla/floquet.hpp"
#include "tla/ode.hpp"
#include "tla/params.hpp"

using namespace tla;

namespace {
constexpr double kTwoPi = 2 * std::numbers::pi;

SolutionGrid period(const ReducedParams& p, int n = 2048) {
  return extend_solution(integrate_uv(p, n), kTwoPi);
}
}  // namespace

TEST_SUITE("floquet") {

TEST_CASE("gamma = 0 closed form") {
  for (auto [e, nu] : {std::pair{1.0, 0.5}, {0.5, 0.25}, {2.0, 0.0}, {3.4, 0.3}}) {
    const FloquetData fd = analytic_free(ReducedParams::from_gamma(0.0, e));
    CHECK(fd.analytic);
    CHECK(fd.nu == doctest::Approx(nu).epsilon(1e-15));
    CHECK(std::abs(nu_from_monodromy(period(ReducedParams::from_gamma(0.0, e))) - nu) < 1e-6);
  }
  CHECK_THROWS_AS(solve_recurrence(ReducedParams::from_gamma(0.0, 1.0), 0.5), DegenerateError);
}

TEST_CASE("arcsin and arccos readings of the monodromy agree") {
  for (double gm : {0.5, 1.0, 2.0, 5.0})
    for (double e : {0.5, 1.0, 2.0, 5.0}) {
      const SolutionGrid g = period(ReducedParams::from_gamma(gm, e));
      const MonodromyNu m = monodromy(g);
      CHECK_FALSE(m.clamped);
      CHECK(m.nu >= 0.0);
      CHECK(m.nu <= 0.5);
      CHECK(std::abs(m.nu - nu_from_trace(g)) < 1e-7);
    }
}

TEST_CASE("recurrence root, residual, normalisation") {
  const ReducedParams p = ReducedParams::from_gamma(2.0, 1.3);
  const double seed = nu_from_monodromy(period(p));
  const FloquetData fd = solve_recurrence(p, seed);
  CHECK(std::abs(fd.nu - seed) < 1e-9);
  CHECK(fd.residual < 1e-10);
  CHECK(fd.J >= truncation_min(p));
  double ss = 0.0, peak = 0.0;
  for (double f : fd.F) {
    ss += f * f;
    if (std::abs(f) > std::abs(peak)) peak = f;
  }
  CHECK(ss == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(peak > 0.0);
  CHECK(std::abs(fd.at(fd.J)) < 1e-12);
  CHECK(fd.at(fd.J + 5) == 0.0);
  // the characteristic function changes sign across the root
  const int J = fd.J;
  CHECK(characteristic(p, fd.nu - 1e-4, J) * characteristic(p, fd.nu + 1e-4, J) < 0.0);
}

TEST_CASE("Floquet expansion reproduces the integrated q") {
  for (auto [gm, e] : {std::pair{1.0, 1.0}, {2.0, 1.3}, {0.5, 5.0}}) {
    const ReducedParams p = ReducedParams::from_gamma(gm, e);
    const SolutionGrid g = period(p);
    FloquetData fd = solve_recurrence(p, nu_from_monodromy(g));
    const SuperpositionFit fit = fit_superposition(g, fd);
    CHECK(fit.reconstruction_error < 1e-8);
    CHECK((fd.orientation == 1 || fd.orientation == -1));
    const auto q = q_of_x(g);
    double worst = 0.0;
    for (std::size_t k = 0; k < g.size(); k += 37) worst = std::max(worst, std::abs(floquet_q(fd, g.x[k]) - q[k]));
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("mode sums") {
  const std::vector<double> F = {0.1, 0.2, 0.3, 0.4, 0.5};  // j = -2..2
  double me = 0.0, mo = 0.0;
  mode_sums(F, 2, me, mo);
  CHECK(me == doctest::Approx(0.1 + 0.3 + 0.5));
  CHECK(mo == doctest::Approx(0.2 + 0.4));
}

TEST_CASE("near-degenerate exponent falls back to least squares") {
  // Omega close to an integer: nu is tiny and the 2x2 system is near singular
  const double e = select_epsilon(3.0, 1.0);
  const ReducedParams p = ReducedParams::from_gamma(e, e);
  const SolutionGrid g = period(p);
  FloquetData fd = solve_recurrence(p, nu_from_monodromy(g));
  const SuperpositionFit fit = fit_superposition(g, fd);
  CHECK(fit.fallback);
  CHECK(fit.reconstruction_error < 1e-6);
}

}
