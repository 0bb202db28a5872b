#include "tla/kernels.hpp"

#include <cmath>
#include <omp.h>

namespace tla::kernels {

namespace {

void accumulate(Gram& g, std::span<const double> x, std::span<const double> y,
                std::span<const double> f, std::size_t lo, std::size_t hi,
                std::vector<double>& phi) {
  const std::size_t n = f.size();
  for (std::size_t k = lo; k < hi; ++k) {
    for (std::size_t m = 0; m < n; ++m) phi[m] = std::cos(f[m] * x[k]);
    for (std::size_t i = 0; i < n; ++i) {
      const double pi = phi[i];
      g.b[i] += pi * y[k];
      double* row = &g.G[i * n];
      for (std::size_t j = i; j < n; ++j) row[j] += pi * phi[j];
    }
    g.yy += y[k] * y[k];
  }
}

Gram empty_gram(std::size_t n) {
  Gram g;
  g.n = n;
  g.G.assign(n * n, 0.0);
  g.b.assign(n, 0.0);
  return g;
}

void mirror(Gram& g) {
  for (std::size_t i = 0; i < g.n; ++i)
    for (std::size_t j = 0; j < i; ++j) g.G[i * g.n + j] = g.G[j * g.n + i];
}

}  // namespace

int max_threads() { return omp_get_max_threads(); }

namespace serial {

Gram cosine_gram(std::span<const double> x, std::span<const double> y,
                 std::span<const double> freqs) {
  Gram g = empty_gram(freqs.size());
  std::vector<double> phi(freqs.size());
  accumulate(g, x, y, freqs, 0, x.size(), phi);
  mirror(g);
  return g;
}

std::vector<double> cosine_synthesis(std::span<const double> x, std::span<const double> freqs,
                                     std::span<const double> amps) {
  std::vector<double> out(x.size(), 0.0);
  for (std::size_t k = 0; k < x.size(); ++k) {
    double s = 0.0;
    for (std::size_t m = 0; m < freqs.size(); ++m) s += amps[m] * std::cos(freqs[m] * x[k]);
    out[k] = s;
  }
  return out;
}

}  // namespace serial

namespace parallel {

Gram cosine_gram(std::span<const double> x, std::span<const double> y,
                 std::span<const double> freqs) {
  const std::size_t n = freqs.size();
  const std::size_t nchunks = (x.size() + kChunk - 1) / kChunk;
  std::vector<Gram> part(nchunks);
#pragma omp parallel
  {
    std::vector<double> phi(n);
#pragma omp for schedule(static)
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(nchunks); ++c) {
      Gram& g = part[c];
      g = empty_gram(n);
      const std::size_t lo = c * kChunk;
      const std::size_t hi = std::min(x.size(), lo + kChunk);
      accumulate(g, x, y, freqs, lo, hi, phi);
    }
  }
  Gram total = empty_gram(n);
  for (const Gram& g : part) {
    for (std::size_t i = 0; i < n * n; ++i) total.G[i] += g.G[i];
    for (std::size_t i = 0; i < n; ++i) total.b[i] += g.b[i];
    total.yy += g.yy;
  }
  mirror(total);
  return total;
}

std::vector<double> cosine_synthesis(std::span<const double> x, std::span<const double> freqs,
                                     std::span<const double> amps) {
  std::vector<double> out(x.size(), 0.0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(x.size()); ++k) {
    double s = 0.0;
    for (std::size_t m = 0; m < freqs.size(); ++m) s += amps[m] * std::cos(freqs[m] * x[k]);
    out[k] = s;
  }
  return out;
}

}  // namespace parallel

}  // namespace tla::kernels
