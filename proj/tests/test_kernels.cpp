#include <doctest.h>

#include <omp.h>

#include <cmath>
#include <random>
#include <vector>

#include "tla/kernels.hpp"

using namespace tla;

namespace {

struct Data {
  std::vector<double> x, y, f, a;
};

Data make(std::size_t n, std::size_t m) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Data d;
  for (std::size_t k = 0; k < n; ++k) {
    d.x.push_back(0.01 * k);
    d.y.push_back(u(rng));
  }
  for (std::size_t j = 0; j < m; ++j) {
    d.f.push_back(0.5 + j);
    d.a.push_back(u(rng));
  }
  return d;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("parallel Gram matches the serial reference") {
  const Data d = make(10000, 9);
  const kernels::Gram s = kernels::serial::cosine_gram(d.x, d.y, d.f);
  const kernels::Gram p = kernels::parallel::cosine_gram(d.x, d.y, d.f);
  REQUIRE(s.n == p.n);
  for (std::size_t i = 0; i < s.G.size(); ++i) CHECK(p.G[i] == doctest::Approx(s.G[i]).epsilon(1e-12));
  for (std::size_t i = 0; i < s.n; ++i) CHECK(p.b[i] == doctest::Approx(s.b[i]).epsilon(1e-12));
  CHECK(p.yy == doctest::Approx(s.yy).epsilon(1e-13));
  // symmetric by construction
  for (std::size_t i = 0; i < s.n; ++i)
    for (std::size_t j = 0; j < s.n; ++j) CHECK(p.G[i * s.n + j] == p.G[j * s.n + i]);
}

TEST_CASE("parallel results do not depend on the thread count") {
  const Data d = make(5000, 7);
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const kernels::Gram one = kernels::parallel::cosine_gram(d.x, d.y, d.f);
  const auto s1 = kernels::parallel::cosine_synthesis(d.x, d.f, d.a);
  omp_set_num_threads(4);
  const kernels::Gram four = kernels::parallel::cosine_gram(d.x, d.y, d.f);
  const auto s4 = kernels::parallel::cosine_synthesis(d.x, d.f, d.a);
  omp_set_num_threads(saved);
  CHECK(one.G == four.G);
  CHECK(one.b == four.b);
  CHECK(one.yy == four.yy);
  CHECK(s1 == s4);
}

TEST_CASE("synthesis matches the serial reference and a hand sum") {
  const Data d = make(3000, 5);
  const auto s = kernels::serial::cosine_synthesis(d.x, d.f, d.a);
  const auto p = kernels::parallel::cosine_synthesis(d.x, d.f, d.a);
  REQUIRE(s.size() == d.x.size());
  for (std::size_t k = 0; k < s.size(); ++k) CHECK(p[k] == s[k]);
  double hand = 0.0;
  for (std::size_t j = 0; j < d.f.size(); ++j) hand += d.a[j] * std::cos(d.f[j] * d.x[123]);
  CHECK(s[123] == doctest::Approx(hand).epsilon(1e-14));
}

TEST_CASE("empty input and for_each_index coverage") {
  const kernels::Gram g = kernels::parallel::cosine_gram({}, {}, std::vector<double>{1.0, 2.0});
  CHECK(g.n == 2);
  CHECK(g.G == std::vector<double>(4, 0.0));
  std::vector<int> hit(1000, 0);
  kernels::for_each_index(hit.size(), [&](std::size_t i) { hit[i] += 1; });
  for (int h : hit) CHECK(h == 1);
  CHECK(kernels::max_threads() >= 1);
}

}
