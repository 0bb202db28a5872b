#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tla/floquet.hpp"
#include "tla/ode.hpp"
#include "tla/params.hpp"
#include "tla/quadrature.hpp"

namespace tla {

// D lines: odd harmonic 2j+1, hyper-Raman 2(j+nu) and 2(j-nu).
// W lines: even harmonic 2j, shifted odd 2j+1+2nu and 2j+1-2nu.
enum class LineClass { OddHarmonic, HyperRamanUp, HyperRamanDown, EvenHarmonic, ShiftedOddUp, ShiftedOddDown };
enum class Route { Cf, Quadrature, Projection, Wkb };

const char* to_string(LineClass c);
const char* to_string(Route r);
bool is_dipole(LineClass c);
double line_frequency(LineClass c, int j, double nu);

struct SpectrumLine {
  double freq = 0.0;
  double amplitude = 0.0;
  LineClass klass = LineClass::OddHarmonic;
  int j = 0;
  Route route = Route::Cf;
};

using Lines = std::vector<SpectrumLine>;

struct SpectrumSet {
  ReducedParams params;
  double nu = 0.0;
  Lines lines;
  double sum_rule_residual = 0.0;
};

// Amplitude of (klass, j) in lines, 0 when absent.
double amplitude_of(const Lines& lines, LineClass c, int j);
Lines filter_route(const Lines& lines, Route r);

// D_j for j <= j_max and D_j^+- from the Fourier coefficients. Needs the
// orientation from fit_superposition.
Lines dipole_amps_cf(const FloquetData& fd, int j_max);

// W lines from the D lines through the inversion equation; W_0 from W(0) = -1.
// Lines inherit the route of the input.
Lines inversion_amps(const Lines& dipole, double nu, const ReducedParams& p);

// |1 + sum of all W amplitudes|, i.e. how far the W lines are from W(0) = -1.
double sum_rule_residual(const Lines& lines);

struct ProjectionOptions {
  int j_max = 24;
  int min_periods = 32;
  double merge_tol = 1e-6;
  double max_condition = 1e8;
};

struct ProjectionReport {
  Lines lines;
  double rms_D = 0.0, max_D = 0.0, rms_W = 0.0, max_W = 0.0;
  double cond_D = 0.0, cond_W = 0.0;
};

ProjectionReport amps_by_projection(const BlochSeries& s, double nu,
                                    const ProjectionOptions& opt = {});

// Least-squares cosine amplitudes on an arbitrary frequency list; returns the
// amplitudes and the design condition number.
std::vector<double> cosine_fit(const std::vector<double>& x, const std::vector<double>& y,
                               const std::vector<double>& freqs, double max_condition,
                               double* condition = nullptr);

// Periodic / quasi-periodic parts of D (delta1, delta2) and W (pi1, pi2).
struct ComponentSplit {
  RealFn delta1, delta2, pi1, pi2;
  double phase_rate = 0.0;  // fastest oscillation inside the components
};

Lines amps_by_quadrature(const ComponentSplit& split, double nu, int j_max,
                         double abs_tol = 1e-8);

// Components re-synthesised from a set of lines.
ComponentSplit split_from_lines(const Lines& lines);

struct Reconstruction {
  std::vector<double> D, W;
};

Reconstruction reconstruct(const Lines& lines, const std::vector<double>& x, int cutoff);

struct Triplet {
  int s = 0;
  double center = 0.0, lower = 0.0, upper = 0.0;
  double amp_center = 0.0, amp_lower = 0.0, amp_upper = 0.0;
};

struct Plateau {
  bool found = false;
  LineClass branch = LineClass::HyperRamanDown;
  double threshold = 0.0;
  int j_lo = 0, j_hi = 0;
  int runs = 0;             // maximal stretches of consecutive j above threshold
  bool contiguous = false;
  std::optional<double> anchor;  // Omega + nu when known
  std::vector<int> members;
};

struct TripletReport {
  double delta = 0.0;
  std::vector<Triplet> triplets;
  Plateau plateau;
};

TripletReport triplet_report(const Lines& lines, double nu,
                             std::optional<double> omega_plus_nu = std::nullopt,
                             std::optional<LineClass> branch = std::nullopt);

}  // namespace tla
