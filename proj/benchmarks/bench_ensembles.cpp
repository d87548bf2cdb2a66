#include <hdcoint/ensembles.hpp>

#include <benchmark/benchmark.h>

using namespace hdcoint;

static void BM_GoeTopEigs(benchmark::State& state) {
  const long n = state.range(0);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(goe_top_eigs(n, 3, ++seed));
}
BENCHMARK(BM_GoeTopEigs)->Arg(10000)->Arg(100000)->Unit(benchmark::kMicrosecond);

static void BM_ProjectorModel(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(projector_model_spectrum({2, 2, 10, ++seed}));
}
BENCHMARK(BM_ProjectorModel)->Unit(benchmark::kMicrosecond);

static void BM_JacobiSpectrum(benchmark::State& state) {
  const JacobiParams jp{100, 50.0, 150.0};
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_jacobi_spectrum(jp, ++seed));
}
BENCHMARK(BM_JacobiSpectrum)->Unit(benchmark::kMillisecond);
