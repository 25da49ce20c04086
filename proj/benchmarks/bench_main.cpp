#include <benchmark/benchmark.h>

#include "twopoint/relative_spectrum.hpp"
#include "twopoint/spectra.hpp"
#include "twopoint/toeplitz.hpp"

using namespace twopoint;

namespace {

const DiskPair kPair(0.5, -0.5);

void BM_Truncate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto phi = cosine_symbol(default_quadrature_size(n));
  for (auto _ : state) {
    benchmark::DoNotOptimize(truncate(kPair, ExtendedParameter::finite({2, 1}), phi, n));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_Truncate)->RangeMultiplier(2)->Range(16, 256)->Unit(benchmark::kMillisecond);

void BM_SigmaMin(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto a = truncate(kPair, ExtendedParameter::finite(1),
                          blaschke_symbol(kPair, default_quadrature_size(n)), n);
  for (auto _ : state) benchmark::DoNotOptimize(sigma_min(a, cplx(0.1, 0.2)));
}
BENCHMARK(BM_SigmaMin)->RangeMultiplier(2)->Range(16, 256)->Unit(benchmark::kMillisecond);

void BM_Portrait(benchmark::State& state) {
  const auto a =
      truncate(kPair, ExtendedParameter::finite(1), blaschke_symbol(kPair, 1024), 64).matrix;
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(portrait(a, {-1.5, -1.5}, {1.5, 1.5}, 16, 16, threads));
  }
}
BENCHMARK(BM_Portrait)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_Eigenvalues(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto a = truncate(kPair, ExtendedParameter::finite({2, 1}),
                          cosine_symbol(default_quadrature_size(n)), n);
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues(a));
}
BENCHMARK(BM_Eigenvalues)->RangeMultiplier(2)->Range(16, 128)->Unit(benchmark::kMillisecond);

void BM_StepEigenpair(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const KernelDifferenceConstant c(1.0);
  const auto phi = step_symbol(kPair, c, 1.0, -1.0, 4096);
  for (auto _ : state) benchmark::DoNotOptimize(construct_eigenpair(kPair, c, phi, 0.0, 0.5, n));
}
BENCHMARK(BM_StepEigenpair)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_PositivityArcs(benchmark::State& state) {
  const KernelDifferenceConstant c({0.3, -1.2});
  const DiskPair p({0.3, 0.2}, {0, -0.4});
  for (auto _ : state) benchmark::DoNotOptimize(positivity_arcs(p, c));
}
BENCHMARK(BM_PositivityArcs);

}  // namespace
BENCHMARK_MAIN();
