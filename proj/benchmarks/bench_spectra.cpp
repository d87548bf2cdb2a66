#include <hdcoint/model.hpp>
#include <hdcoint/spectra.hpp>

#include <benchmark/benchmark.h>

using namespace hdcoint;

static void BM_SimulateNull(benchmark::State& state) {
  const VarKSpec spec = VarKSpec::null_model(92, 522, 1);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(simulate(spec, ++seed));
}
BENCHMARK(BM_SimulateNull)->Unit(benchmark::kMillisecond);

static void BM_ModifiedSpectrum(benchmark::State& state) {
  const PanelSeries panel = simulate(VarKSpec::null_model(92, 522, 1), 1);
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(modified_spectrum(panel, k));
}
BENCHMARK(BM_ModifiedSpectrum)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

static void BM_JohansenSpectrum(benchmark::State& state) {
  const PanelSeries panel = simulate(VarKSpec::null_model(92, 522, 4), 1);
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(johansen_spectrum(panel, k, DeterministicTerms::intercept()));
}
BENCHMARK(BM_JohansenSpectrum)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);
