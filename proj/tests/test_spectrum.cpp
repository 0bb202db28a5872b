#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tla/errors.hpp"
#include "tla/floquet.hpp"
#include "tla/ode.hpp"
#include "tla/params.hpp"
#include "tla/spectrum.hpp"

using namespace tla;

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

struct Exact {
  ReducedParams p;
  SolutionGrid g;
  FloquetData fd;
};

Exact exact(double gm, double e) {
  Exact r{ReducedParams::from_gamma(gm, e), {}, {}};
  r.g = extend_solution(integrate_uv(r.p), kTwoPi);
  r.fd = solve_recurrence(r.p, nu_from_monodromy(r.g));
  fit_superposition(r.g, r.fd);
  return r;
}

// A made-up line set: a few of each class, with W_0 closing the sum rule.
Lines synthetic(double nu) {
  Lines l;
  const double d[] = {0.6, -0.2, 0.05};
  for (int j = 0; j < 3; ++j) l.push_back({line_frequency(LineClass::OddHarmonic, j, nu), d[j], LineClass::OddHarmonic, j, Route::Cf});
  l.push_back({line_frequency(LineClass::HyperRamanUp, 0, nu), 0.3, LineClass::HyperRamanUp, 0, Route::Cf});
  l.push_back({line_frequency(LineClass::HyperRamanUp, 2, nu), -0.1, LineClass::HyperRamanUp, 2, Route::Cf});
  l.push_back({line_frequency(LineClass::HyperRamanDown, 1, nu), 0.25, LineClass::HyperRamanDown, 1, Route::Cf});
  l.push_back({line_frequency(LineClass::EvenHarmonic, 1, nu), 0.15, LineClass::EvenHarmonic, 1, Route::Cf});
  l.push_back({line_frequency(LineClass::ShiftedOddUp, 0, nu), -0.12, LineClass::ShiftedOddUp, 0, Route::Cf});
  l.push_back({line_frequency(LineClass::ShiftedOddDown, 0, nu), 0.2, LineClass::ShiftedOddDown, 0, Route::Cf});
  l.push_back({line_frequency(LineClass::ShiftedOddDown, 2, nu), -0.07, LineClass::ShiftedOddDown, 2, Route::Cf});
  l.push_back({0.0, -1.0 - (0.15 - 0.12 + 0.2 - 0.07), LineClass::EvenHarmonic, 0, Route::Cf});
  return l;
}

}  // namespace

TEST_SUITE("spectrum") {

TEST_CASE("line frequencies") {
  const double nu = 0.2;
  CHECK(line_frequency(LineClass::OddHarmonic, 3, nu) == doctest::Approx(7.0));
  CHECK(line_frequency(LineClass::HyperRamanUp, 3, nu) == doctest::Approx(6.4));
  CHECK(line_frequency(LineClass::HyperRamanDown, 3, nu) == doctest::Approx(5.6));
  CHECK(line_frequency(LineClass::EvenHarmonic, 3, nu) == doctest::Approx(6.0));
  CHECK(line_frequency(LineClass::ShiftedOddUp, 3, nu) == doctest::Approx(7.4));
  CHECK(line_frequency(LineClass::ShiftedOddDown, 3, nu) == doctest::Approx(6.6));
  CHECK(is_dipole(LineClass::HyperRamanDown));
  CHECK_FALSE(is_dipole(LineClass::ShiftedOddUp));
  CHECK(std::string(to_string(LineClass::HyperRamanUp)) == "hyperraman-up");
}

TEST_CASE("reconstruct sums the cosines") {
  const Lines l = synthetic(0.2);
  const Reconstruction r = reconstruct(l, {0.0, 0.7}, 16);
  double d = 0.0, w = 0.0;
  for (const SpectrumLine& s : l) (is_dipole(s.klass) ? d : w) += s.amplitude * std::cos(s.freq * 0.7);
  CHECK(r.D[1] == doctest::Approx(d).epsilon(1e-14));
  CHECK(r.W[1] == doctest::Approx(w).epsilon(1e-14));
  CHECK(r.W[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(sum_rule_residual(l) < 1e-14);
}

TEST_CASE("projection recovers synthetic amplitudes") {
  const double nu = 0.2;
  const Lines l = synthetic(nu);
  BlochSeries s;
  for (int k = 0; k <= 32 * 256; ++k) s.x.push_back(k * kTwoPi / 256);
  const Reconstruction r = reconstruct(l, s.x, 100);
  s.D = r.D;
  s.W = r.W;
  ProjectionOptions opt;
  opt.j_max = 6;
  const ProjectionReport rep = amps_by_projection(s, nu, opt);
  for (const SpectrumLine& want : l)
    CHECK(amplitude_of(rep.lines, want.klass, want.j) == doctest::Approx(want.amplitude).epsilon(1e-9));
  CHECK(rep.max_D < 1e-10);
}

TEST_CASE("quadrature recovers synthetic amplitudes") {
  const double nu = 0.2;
  const Lines l = synthetic(nu);
  const Lines got = amps_by_quadrature(split_from_lines(l), nu, 6, 1e-10);
  for (const SpectrumLine& want : l)
    CHECK(amplitude_of(got, want.klass, want.j) == doctest::Approx(want.amplitude).epsilon(1e-8));
  CHECK(std::abs(amplitude_of(got, LineClass::OddHarmonic, 5)) < 1e-8);
}

TEST_CASE("exact spectrum: routes agree, sum rule, reconstruction") {
  for (auto [gm, e] : {std::pair{1.0, 1.0}, {2.0, 1.3}}) {
    const Exact x = exact(gm, e);
    const Lines cf = dipole_amps_cf(x.fd, 24);
    const Lines w = inversion_amps(cf, x.fd.nu, x.p);
    CHECK(sum_rule_residual(w) < 1e-6);

    // projection on a long window sampled from the symmetry extension
    const SolutionGrid longg = extend_solution(integrate_uv(x.p, 512), 64 * kTwoPi);
    const ProjectionReport pr = amps_by_projection(dipole_inversion(longg), x.fd.nu);
    double peak = 0.0, diff = 0.0;
    for (const SpectrumLine& s : cf) peak = std::max(peak, std::abs(s.amplitude));
    for (const SpectrumLine& s : cf) diff = std::max(diff, std::abs(s.amplitude - amplitude_of(pr.lines, s.klass, s.j)));
    CHECK(diff / peak < 1e-4);

    Lines all = cf;
    all.insert(all.end(), w.begin(), w.end());
    const BlochSeries bs = dipole_inversion(x.g);
    const Reconstruction r = reconstruct(all, bs.x, 16);
    double err = 0.0;
    for (std::size_t k = 0; k < bs.x.size(); ++k)
      err = std::max({err, std::abs(r.D[k] - bs.D[k]), std::abs(r.W[k] - bs.W[k])});
    CHECK(err < 1e-3);
  }
}

TEST_CASE("degenerate and precondition errors") {
  FloquetData fd;
  fd.J = 1;
  fd.F = {0.0, 1.0, 0.0};
  CHECK_THROWS_AS(dipole_amps_cf(fd, 4), PreconditionError);
  fd.orientation = 1;
  fd.F = {0.0, 0.0, 0.0};
  CHECK_THROWS_AS(dipole_amps_cf(fd, 4), DegenerateError);

  CHECK_THROWS_AS(inversion_amps({}, 0.5, ReducedParams::from_gamma(1, 1)), DegenerateError);
  CHECK_THROWS_AS(amps_by_quadrature(split_from_lines(synthetic(0.2)), 0.0005, 4), DegenerateError);

  BlochSeries s;
  s.x = {0.0, 1.0};
  s.D = s.W = {0.0, 0.0};
  CHECK_THROWS_AS(amps_by_projection(s, 0.2), PreconditionError);

  std::vector<double> x, y;
  for (int k = 0; k < 100; ++k) {
    x.push_back(0.1 * k);
    y.push_back(std::cos(x.back()));
  }
  CHECK_THROWS_AS(cosine_fit(x, y, {1.0, 1.0}, 1e8), ConditioningError);
}

TEST_CASE("triplets and plateau on a made-up spectrum") {
  const double nu = 0.3;
  Lines l;
  for (int j = 0; j <= 6; ++j) l.push_back({0, 1.0 / (j + 1), LineClass::OddHarmonic, j, Route::Cf});
  for (int j = 1; j <= 10; ++j)
    l.push_back({0, (j >= 4 && j <= 7) ? 0.3 : 0.01, LineClass::HyperRamanDown, j, Route::Cf});
  for (int j = 0; j <= 10; ++j) l.push_back({0, 0.001, LineClass::HyperRamanUp, j, Route::Cf});
  const TripletReport tr = triplet_report(l, nu, 7.3);
  CHECK(tr.delta == doctest::Approx(0.4));
  REQUIRE(tr.triplets.size() == 7);
  CHECK(tr.triplets[2].lower == doctest::Approx(4.6));
  CHECK(tr.triplets[2].upper == doctest::Approx(5.4));
  CHECK(tr.plateau.found);
  CHECK(tr.plateau.branch == LineClass::HyperRamanDown);
  CHECK(tr.plateau.j_lo == 4);
  CHECK(tr.plateau.j_hi == 7);
  CHECK(tr.plateau.contiguous);

  l.push_back({0, 0.5, LineClass::HyperRamanDown, 9, Route::Cf});
  const TripletReport split = triplet_report(l, nu, std::nullopt, LineClass::HyperRamanDown);
  CHECK(split.plateau.runs == 2);
  CHECK_FALSE(split.plateau.contiguous);
}

}
