#include <benchmark/benchmark.h>

#include <vector>

#include "prodnorm/prodnorm.hpp"

using namespace prodnorm;

namespace {

// Args: n, 10 * rho.
DistParams params(const benchmark::State& st) {
  return DistParams::with_scale(static_cast<int>(st.range(0)), 0.1 * static_cast<double>(st.range(1)), 1.0);
}

void BM_Pdf(benchmark::State& st) {
  const auto p = params(st);
  double x = -3.0;
  for (auto _ : st) {
    benchmark::DoNotOptimize(dist::pdf(p, x));
    x = x > 3.0 ? -3.0 : x + 0.013;
  }
}
BENCHMARK(BM_Pdf)->Args({1, 0})->Args({3, 5})->Args({10, -7});

void BM_Cdf(benchmark::State& st) {
  const auto p = params(st);
  double x = -3.0;
  for (auto _ : st) {
    benchmark::DoNotOptimize(dist::cdf(p, x));
    x = x > 3.0 ? -3.0 : x + 0.37;
  }
}
// Struve (rho = 0), incomplete gamma (even n), quadrature (odd n).
BENCHMARK(BM_Cdf)->Args({3, 0})->Args({4, 5})->Args({3, 5});

void BM_Median(benchmark::State& st) {
  const auto p = params(st);
  for (auto _ : st) benchmark::DoNotOptimize(dist::median(p));
}
BENCHMARK(BM_Median)->Args({1, 5})->Args({7, 7});

void BM_Sample(benchmark::State& st) {
  const auto p = DistParams::with_scale(4, 0.5, 1.0);
  const auto rep = static_cast<sampling::Representation>(st.range(0));
  const std::size_t count = 1 << 16;
  for (auto _ : st) benchmark::DoNotOptimize(sampling::sample(p, rep, 1, count).values.data());
  st.SetItemsProcessed(static_cast<std::int64_t>(st.iterations() * count));
}
BENCHMARK(BM_Sample)->DenseRange(0, 4);

void BM_ChaosGap(benchmark::State& st) {
  const chaos::ChaosSpec spec{-0.55, 0.5, static_cast<int>(st.range(0))};
  for (auto _ : st) benchmark::DoNotOptimize(chaos::six_moment_gap(spec).M);
}
BENCHMARK(BM_ChaosGap)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_SteinQuadrature(benchmark::State& st) {
  const auto p = DistParams::with_scale(3, 0.4, 1.0);
  const auto g = stein::monomial(4);
  for (auto _ : st) benchmark::DoNotOptimize(stein::stein_residual(p, g).residual);
}
BENCHMARK(BM_SteinQuadrature);

}  // namespace

BENCHMARK_MAIN();
