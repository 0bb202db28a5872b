#pragma once

#include <cstddef>
#include <span>
#include <vector>

// Data-parallel inner loops. Each has a plain serial version kept as the
// reference for tests and benchmarks; the parallel one reduces over fixed
// chunks in chunk order, so its result does not depend on the thread count.

namespace tla::kernels {

// Normal equations of the cosine least-squares fit:
// G = sum_k phi(x_k) phi(x_k)^T, b = sum_k phi(x_k) y_k, phi_m(x) = cos(f_m x).
struct Gram {
  std::size_t n = 0;
  std::vector<double> G;  // row-major n x n
  std::vector<double> b;
  double yy = 0.0;        // sum y_k^2
};

// cosine_synthesis returns sum_m a_m cos(f_m x_k) at every x_k.
namespace serial {
Gram cosine_gram(std::span<const double> x, std::span<const double> y,
                 std::span<const double> freqs);
std::vector<double> cosine_synthesis(std::span<const double> x, std::span<const double> freqs,
                                     std::span<const double> amps);
}  // namespace serial

namespace parallel {
Gram cosine_gram(std::span<const double> x, std::span<const double> y,
                 std::span<const double> freqs);
std::vector<double> cosine_synthesis(std::span<const double> x, std::span<const double> freqs,
                                     std::span<const double> amps);
}  // namespace parallel

inline constexpr std::size_t kChunk = 1024;

int max_threads();

// Run f(i) for i in [0, n) across threads; f writes only to slot i.
template <class F>
void for_each_index(std::size_t n, F&& f) {
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) f(static_cast<std::size_t>(i));
}

}  // namespace tla::kernels
