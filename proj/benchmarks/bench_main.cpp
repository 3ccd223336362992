#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "hyperpam/brownian.hpp"
#include "hyperpam/geometry.hpp"
#include "hyperpam/kernel_table.hpp"
#include "hyperpam/kernels.hpp"
#include "hyperpam/rng.hpp"
#include "hyperpam/specialfn.hpp"

using namespace hyperpam;

static void BM_WalkerStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  GeodesicWalker walker(n, 1.0);
  ModelPoint x = ModelPoint::basepoint(n, 1.0);
  Rng rng(7);
  for (auto _ : state) {
    walker.step(x.mutable_coords(), 1e-3, rng);
    benchmark::DoNotOptimize(x.coords().data());
  }
}
BENCHMARK(BM_WalkerStep)->Arg(2)->Arg(3)->Arg(8);

static void BM_Distance(benchmark::State& state) {
  const auto a = ModelPoint::along_axis(3, 1.0, 0.7);
  const auto b = ModelPoint::along_axis(3, 1.0, -1.3);
  for (auto _ : state) benchmark::DoNotOptimize(distance(a.coords(), b.coords(), 1.0));
}
BENCHMARK(BM_Distance);

static void BM_KernelTableLookup(benchmark::State& state) {
  KernelTableSpec spec;
  spec.order = 2.0;
  const KernelTable table(spec);
  std::vector<double> d(1024);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::pow(10.0, -3.0 + 4.0 * static_cast<double>(i) / d.size());
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(table(d[i]));
    i = (i + 1) & 1023;
  }
}
BENCHMARK(BM_KernelTableLookup);

static void BM_KernelTableBuild(benchmark::State& state) {
  KernelTableSpec spec;
  spec.order = 1.2;
  for (auto _ : state) {
    KernelTable table(spec);
    benchmark::DoNotOptimize(table.log_values().data());
  }
}
BENCHMARK(BM_KernelTableBuild)->Unit(benchmark::kMillisecond);

static void BM_FractionalKernel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(fractional_kernel(1.0, 3, 1.0, 0.5, HeatKernelMode::exact()));
}
BENCHMARK(BM_FractionalKernel)->Unit(benchmark::kMicrosecond);

static void BM_GammaUpper(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gamma_upper(0.7, 3.0));
}
BENCHMARK(BM_GammaUpper)->Unit(benchmark::kMicrosecond);

static void BM_NegEi(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(neg_ei(0.01));
}
BENCHMARK(BM_NegEi)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
