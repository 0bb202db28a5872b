#include "tla/spectrum.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tla/errors.hpp"
#include "tla/kernels.hpp"

namespace tla {

namespace {

constexpr double kPi = std::numbers::pi;

struct Slot {
  double freq;
  LineClass klass;
  int j;
};

std::vector<Slot> merged_slots(std::vector<Slot> raw, double tol) {
  std::vector<Slot> out;
  for (const Slot& s : raw) {
    bool dup = false;
    for (const Slot& o : out)
      if (std::abs(o.freq - s.freq) < tol) dup = true;
    if (!dup) out.push_back(s);
  }
  return out;
}

std::vector<Slot> dipole_slots(double nu, int jmax) {
  std::vector<Slot> v;
  for (int j = 0; j <= jmax; ++j) v.push_back({2.0 * j + 1.0, LineClass::OddHarmonic, j});
  for (int j = 0; j <= jmax; ++j) v.push_back({2.0 * (j + nu), LineClass::HyperRamanUp, j});
  for (int j = 1; j <= jmax; ++j) v.push_back({2.0 * (j - nu), LineClass::HyperRamanDown, j});
  return v;
}

std::vector<Slot> inversion_slots(double nu, int jmax) {
  std::vector<Slot> v;
  for (int j = 0; j <= jmax; ++j) v.push_back({2.0 * j, LineClass::EvenHarmonic, j});
  for (int j = 0; j <= jmax; ++j) v.push_back({2.0 * j + 1.0 + 2.0 * nu, LineClass::ShiftedOddUp, j});
  for (int j = 0; j <= jmax; ++j) v.push_back({2.0 * j + 1.0 - 2.0 * nu, LineClass::ShiftedOddDown, j});
  return v;
}

// sum_r F_r F_{r+m}
double corr(const FloquetData& fd, int m) {
  double s = 0.0;
  for (int r = -fd.J; r <= fd.J; ++r) s += fd.at(r) * fd.at(r + m);
  return s;
}

// sum_r (-1)^r F_{-r} F_{r+m}
double corr_alt(const FloquetData& fd, int m) {
  double s = 0.0;
  for (int r = -fd.J; r <= fd.J; ++r) s += ((r % 2 == 0) ? 1.0 : -1.0) * fd.at(-r) * fd.at(r + m);
  return s;
}

void fit_block(const std::vector<double>& x, const std::vector<double>& y,
               const std::vector<Slot>& slots, double max_cond, Route route, Lines& out,
               double& rms, double& worst, double& cond) {
  std::vector<double> f;
  for (const Slot& s : slots) f.push_back(s.freq);
  const std::vector<double> a = cosine_fit(x, y, f, max_cond, &cond);
  const auto fitted = kernels::parallel::cosine_synthesis(x, f, a);
  double ss = 0.0;
  worst = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double r = fitted[k] - y[k];
    ss += r * r;
    worst = std::max(worst, std::abs(r));
  }
  rms = std::sqrt(ss / std::max<std::size_t>(1, x.size()));
  for (std::size_t m = 0; m < slots.size(); ++m)
    out.push_back({slots[m].freq, a[m], slots[m].klass, slots[m].j, route});
}

}  // namespace

const char* to_string(LineClass c) {
  switch (c) {
    case LineClass::OddHarmonic: return "odd-harmonic";
    case LineClass::HyperRamanUp: return "hyperraman-up";
    case LineClass::HyperRamanDown: return "hyperraman-down";
    case LineClass::EvenHarmonic: return "even-harmonic";
    case LineClass::ShiftedOddUp: return "shifted-odd-up";
    case LineClass::ShiftedOddDown: return "shifted-odd-down";
  }
  return "?";
}

const char* to_string(Route r) {
  switch (r) {
    case Route::Cf: return "cf";
    case Route::Quadrature: return "quadrature";
    case Route::Projection: return "projection";
    case Route::Wkb: return "wkb";
  }
  return "?";
}

bool is_dipole(LineClass c) {
  return c == LineClass::OddHarmonic || c == LineClass::HyperRamanUp ||
         c == LineClass::HyperRamanDown;
}

double line_frequency(LineClass c, int j, double nu) {
  switch (c) {
    case LineClass::OddHarmonic: return 2.0 * j + 1.0;
    case LineClass::HyperRamanUp: return 2.0 * (j + nu);
    case LineClass::HyperRamanDown: return 2.0 * (j - nu);
    case LineClass::EvenHarmonic: return 2.0 * j;
    case LineClass::ShiftedOddUp: return 2.0 * j + 1.0 + 2.0 * nu;
    case LineClass::ShiftedOddDown: return 2.0 * j + 1.0 - 2.0 * nu;
  }
  return 0.0;
}

double amplitude_of(const Lines& lines, LineClass c, int j) {
  for (const SpectrumLine& l : lines)
    if (l.klass == c && l.j == j) return l.amplitude;
  return 0.0;
}

Lines filter_route(const Lines& lines, Route r) {
  Lines out;
  for (const SpectrumLine& l : lines)
    if (l.route == r) out.push_back(l);
  return out;
}

Lines dipole_amps_cf(const FloquetData& fd, int j_max) {
  if (fd.orientation == 0)
    throw PreconditionError("dipole_amps_cf: run fit_superposition first (orientation unset)");
  const double n2 = fd.M_e * fd.M_e + fd.M_o * fd.M_o;
  if (n2 < 1e-14) throw DegenerateError("dipole_amps_cf: M_e^2 + M_o^2 below 1e-14");
  const double sigma = fd.orientation;
  const double c_odd = sigma * 2.0 * (fd.M_e * fd.M_e - fd.M_o * fd.M_o) / (n2 * n2);
  const double c_hr = -sigma * 2.0 * fd.M_e * fd.M_o / (n2 * n2);
  Lines out;
  for (int j = 0; j <= j_max; ++j)
    out.push_back({2.0 * j + 1.0, c_odd * corr(fd, 2 * j + 1), LineClass::OddHarmonic, j, Route::Cf});
  for (int j = 0; j <= j_max; ++j)
    out.push_back({2.0 * (j + fd.nu), c_hr * corr_alt(fd, 2 * j), LineClass::HyperRamanUp, j, Route::Cf});
  for (int j = 1; j <= j_max; ++j)
    out.push_back({2.0 * (j - fd.nu), c_hr * corr_alt(fd, -2 * j), LineClass::HyperRamanDown, j, Route::Cf});
  return out;
}

Lines inversion_amps(const Lines& dipole, double nu, const ReducedParams& p) {
  if (std::abs(1.0 - 2.0 * nu) < 1e-12)
    throw DegenerateError("inversion_amps: nu = 1/2 makes the W_0^- denominator vanish");
  const Route route = dipole.empty() ? Route::Cf : dipole.front().route;
  int jmax = 0;
  for (const SpectrumLine& l : dipole) jmax = std::max(jmax, l.j);
  auto d = [&](int j) { return amplitude_of(dipole, LineClass::OddHarmonic, j); };
  auto dp = [&](int j) { return amplitude_of(dipole, LineClass::HyperRamanUp, j); };
  auto dm = [&](int j) { return amplitude_of(dipole, LineClass::HyperRamanDown, j); };
  const double a = p.alpha;

  Lines out;
  double total = 0.0;
  for (int j = 1; j <= jmax; ++j) {
    const double w = -a * (d(j) + d(j - 1) + (d(j) - d(j - 1)) / (2.0 * j));
    out.push_back({2.0 * j, w, LineClass::EvenHarmonic, j, route});
    total += w;
  }
  for (int j = 0; j <= jmax; ++j) {
    const double g = 2.0 * j + 1.0 + 2.0 * nu;
    const double w = -a * (dp(j) + dp(j + 1) + (dp(j + 1) - dp(j)) / g);
    out.push_back({g, w, LineClass::ShiftedOddUp, j, route});
    total += w;
  }
  {
    const double g = 1.0 - 2.0 * nu;
    const double w = -a * (dp(0) + dm(1) + (dm(1) - dp(0)) / g);
    out.push_back({g, w, LineClass::ShiftedOddDown, 0, route});
    total += w;
  }
  for (int j = 1; j <= jmax; ++j) {
    const double g = 2.0 * j + 1.0 - 2.0 * nu;
    const double w = -a * (dm(j) + dm(j + 1) + (dm(j + 1) - dm(j)) / g);
    out.push_back({g, w, LineClass::ShiftedOddDown, j, route});
    total += w;
  }
  out.insert(out.begin(), {0.0, -1.0 - total, LineClass::EvenHarmonic, 0, route});
  return out;
}

double sum_rule_residual(const Lines& lines) {
  double s = 1.0;
  for (const SpectrumLine& l : lines)
    if (!is_dipole(l.klass)) s += l.amplitude;
  return std::abs(s);
}

std::vector<double> cosine_fit(const std::vector<double>& x, const std::vector<double>& y,
                               const std::vector<double>& freqs, double max_condition,
                               double* condition) {
  const kernels::Gram g = kernels::parallel::cosine_gram(x, y, freqs);
  const auto n = static_cast<Eigen::Index>(g.n);
  const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> G(
      g.G.data(), n, n);
  const Eigen::Map<const Eigen::VectorXd> b(g.b.data(), n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G, Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff(), lmax = es.eigenvalues().maxCoeff();
  const double cond = (lmin > 0.0) ? std::sqrt(lmax / lmin) : INFINITY;
  if (condition) *condition = cond;
  if (!(cond <= max_condition)) {
    std::ostringstream os;
    os << "projection design matrix condition " << cond << " exceeds " << max_condition
       << "; use a longer window";
    throw ConditioningError(os.str(), cond);
  }
  const Eigen::VectorXd a = G.ldlt().solve(b);
  return std::vector<double>(a.data(), a.data() + n);
}

ProjectionReport amps_by_projection(const BlochSeries& s, double nu, const ProjectionOptions& opt) {
  if (s.x.size() < 2 || s.x.back() - s.x.front() < opt.min_periods * 2.0 * kPi * (1.0 - 1e-9)) {
    std::ostringstream os;
    os << "projection needs at least " << opt.min_periods << " periods of samples";
    throw PreconditionError(os.str());
  }
  ProjectionReport rep;
  fit_block(s.x, s.D, merged_slots(dipole_slots(nu, opt.j_max), opt.merge_tol),
            opt.max_condition, Route::Projection, rep.lines, rep.rms_D, rep.max_D, rep.cond_D);
  fit_block(s.x, s.W, merged_slots(inversion_slots(nu, opt.j_max), opt.merge_tol),
            opt.max_condition, Route::Projection, rep.lines, rep.rms_W, rep.max_W, rep.cond_W);
  return rep;
}

Lines amps_by_quadrature(const ComponentSplit& split, double nu, int j_max, double abs_tol) {
  constexpr double tau = 1e-3;
  if (nu <= tau || nu >= 0.5 - tau) {
    std::ostringstream os;
    os << "quadrature route: nu = " << nu << " is within " << tau
       << " of 0 or 1/2; use the projection route";
    throw DegenerateError(os.str());
  }
  std::vector<Slot> slots = dipole_slots(nu, j_max);
  for (const Slot& s : inversion_slots(nu, j_max)) slots.push_back(s);

  const double s2 = std::sin(2.0 * kPi * nu);
  const double h = 0.5 * kPi;
  Lines out(slots.size());
  kernels::for_each_index(slots.size(), [&](std::size_t i) {
    const Slot& sl = slots[i];
    const double f = sl.freq;
    const double panel = kPi / (2.0 * (1.0 + f + split.phase_rate));
    auto integ = [&](auto g) { return integrate_panels(g, 0.0, h, panel, abs_tol * 0.1); };
    double amp = 0.0;
    switch (sl.klass) {
      case LineClass::OddHarmonic:
        amp = 4.0 / kPi * integ([&](double x) { return split.delta1(x) * std::cos(f * x); });
        break;
      case LineClass::EvenHarmonic: {
        const double m = (sl.j == 0) ? 1.0 : 2.0;
        amp = 2.0 * m / kPi * integ([&](double x) { return split.pi1(x) * std::cos(f * x); });
        break;
      }
      case LineClass::HyperRamanUp:
      case LineClass::HyperRamanDown:
      case LineClass::ShiftedOddUp:
      case LineClass::ShiftedOddDown: {
        const bool dip = is_dipole(sl.klass);
        const RealFn& c = dip ? split.delta2 : split.pi2;
        const bool up = sl.klass == LineClass::HyperRamanUp || sl.klass == LineClass::ShiftedOddUp;
        // D: +- on the shift term for the up/down branch; W: the opposite.
        const double sign = (up == dip) ? 1.0 : -1.0;
        const double a = 2.0 / kPi * integ([&](double x) { return c(x) * std::cos(f * x); });
        const double b = integ([&](double x) { return (c(x - kPi) - c(x + kPi)) * std::sin(f * x); });
        amp = a + sign * b / (kPi * s2);
        break;
      }
    }
    out[i] = {f, amp, sl.klass, sl.j, Route::Quadrature};
  });
  return out;
}

ComponentSplit split_from_lines(const Lines& lines) {
  struct Part {
    std::vector<double> f, a;
    double operator()(double x) const {
      double s = 0.0;
      for (std::size_t m = 0; m < f.size(); ++m) s += a[m] * std::cos(f[m] * x);
      return s;
    }
  };
  Part d1, d2, p1, p2;
  double rate = 0.0;
  for (const SpectrumLine& l : lines) {
    Part* p = nullptr;
    switch (l.klass) {
      case LineClass::OddHarmonic: p = &d1; break;
      case LineClass::HyperRamanUp:
      case LineClass::HyperRamanDown: p = &d2; break;
      case LineClass::EvenHarmonic: p = &p1; break;
      case LineClass::ShiftedOddUp:
      case LineClass::ShiftedOddDown: p = &p2; break;
    }
    p->f.push_back(l.freq);
    p->a.push_back(l.amplitude);
    rate = std::max(rate, l.freq);
  }
  ComponentSplit s{d1, d2, p1, p2};
  s.phase_rate = rate;
  return s;
}

Reconstruction reconstruct(const Lines& lines, const std::vector<double>& x, int cutoff) {
  std::vector<double> fd, ad, fw, aw;
  for (const SpectrumLine& l : lines) {
    if (l.j > cutoff) continue;
    if (is_dipole(l.klass)) {
      fd.push_back(l.freq);
      ad.push_back(l.amplitude);
    } else {
      fw.push_back(l.freq);
      aw.push_back(l.amplitude);
    }
  }
  return {kernels::parallel::cosine_synthesis(x, fd, ad),
          kernels::parallel::cosine_synthesis(x, fw, aw)};
}

TripletReport triplet_report(const Lines& lines, double nu, std::optional<double> omega_plus_nu,
                             std::optional<LineClass> branch) {
  TripletReport rep;
  rep.delta = 1.0 - 2.0 * nu;
  double odd_max = 0.0;
  int smax = -1;
  for (const SpectrumLine& l : lines)
    if (l.klass == LineClass::OddHarmonic) {
      odd_max = std::max(odd_max, std::abs(l.amplitude));
      smax = std::max(smax, l.j);
    }
  if (smax < 0 || odd_max == 0.0) return rep;

  for (int s = 0; s <= smax; ++s) {
    Triplet t;
    t.s = s;
    t.center = 2.0 * s + 1.0;
    t.lower = t.center - rep.delta;
    t.upper = t.center + rep.delta;
    t.amp_center = amplitude_of(lines, LineClass::OddHarmonic, s);
    t.amp_lower = amplitude_of(lines, LineClass::HyperRamanUp, s);
    t.amp_upper = amplitude_of(lines, LineClass::HyperRamanDown, s + 1);
    rep.triplets.push_back(t);
  }

  Plateau& pl = rep.plateau;
  pl.anchor = omega_plus_nu;
  if (branch) {
    pl.branch = *branch;
  } else {
    double pu = 0.0, pd = 0.0;
    for (const SpectrumLine& l : lines) {
      if (l.klass == LineClass::HyperRamanUp) pu += l.amplitude * l.amplitude;
      if (l.klass == LineClass::HyperRamanDown) pd += l.amplitude * l.amplitude;
    }
    pl.branch = (pu > pd) ? LineClass::HyperRamanUp : LineClass::HyperRamanDown;
  }
  // relative to the fundamental; the strongest odd line only if D_0 is absent
  const double d0 = std::abs(amplitude_of(lines, LineClass::OddHarmonic, 0));
  pl.threshold = 0.1 * (d0 > 0.0 ? d0 : odd_max);
  std::vector<int> js;
  for (const SpectrumLine& l : lines)
    if (l.klass == pl.branch && std::abs(l.amplitude) >= pl.threshold) js.push_back(l.j);
  std::sort(js.begin(), js.end());
  js.erase(std::unique(js.begin(), js.end()), js.end());
  pl.members = js;
  if (js.empty()) return rep;
  pl.found = true;
  pl.j_lo = js.front();
  pl.j_hi = js.back();
  pl.runs = 1;
  for (std::size_t i = 1; i < js.size(); ++i)
    if (js[i] != js[i - 1] + 1) ++pl.runs;
  pl.contiguous = pl.runs == 1;
  return rep;
}

}  // namespace tla
