// Serial reference against the OpenMP kernels, plus the per-epsilon scan
// that fans out over threads.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "tla/kernels.hpp"
#include "tla/pipeline.hpp"

namespace {

struct Signal {
  std::vector<double> x, y, f, a;
};

// 64 periods at 512 samples, 49 frequencies: the projection's default size
Signal make(std::size_t n, std::size_t m) {
  Signal s;
  for (std::size_t k = 0; k < n; ++k) {
    s.x.push_back(k * 2.0 * M_PI / 512.0);
    s.y.push_back(std::sin(0.37 * s.x.back()) + 0.1 * std::cos(3.1 * s.x.back()));
  }
  for (std::size_t j = 0; j < m; ++j) {
    s.f.push_back(1.0 + 0.96 * j);
    s.a.push_back(1.0 / (1.0 + j));
  }
  return s;
}

void BM_GramSerial(benchmark::State& st) {
  const Signal s = make(st.range(0), 49);
  for (auto _ : st) benchmark::DoNotOptimize(tla::kernels::serial::cosine_gram(s.x, s.y, s.f));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_GramParallel(benchmark::State& st) {
  const Signal s = make(st.range(0), 49);
  for (auto _ : st) benchmark::DoNotOptimize(tla::kernels::parallel::cosine_gram(s.x, s.y, s.f));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_SynthesisSerial(benchmark::State& st) {
  const Signal s = make(st.range(0), 74);
  for (auto _ : st) benchmark::DoNotOptimize(tla::kernels::serial::cosine_synthesis(s.x, s.f, s.a));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_SynthesisParallel(benchmark::State& st) {
  const Signal s = make(st.range(0), 74);
  for (auto _ : st) benchmark::DoNotOptimize(tla::kernels::parallel::cosine_synthesis(s.x, s.f, s.a));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_ScanFloquet(benchmark::State& st) {
  const std::vector<double> eps = tla::EpsRange{10.0, 12.5, 0.01}.values();
  for (auto _ : st) benchmark::DoNotOptimize(tla::scan_floquet(1.0, eps));
}

}  // namespace

BENCHMARK(BM_GramSerial)->Arg(8192)->Arg(32768)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GramParallel)->Arg(8192)->Arg(32768)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SynthesisSerial)->Arg(8192)->Arg(32768)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SynthesisParallel)->Arg(8192)->Arg(32768)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ScanFloquet)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
