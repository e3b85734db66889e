#include <benchmark/benchmark.h>

#include <cmath>

#include "sefield/apps.hpp"
#include "sefield/chenstein.hpp"
#include "sefield/field.hpp"
#include "sefield/limits.hpp"
#include "sefield/rng.hpp"
#include "sefield/spectra.hpp"

namespace {

void BM_FieldMax(benchmark::State& state) {
  const auto params = sefield::make_field_params(state.range(0), 0.2);
  std::uint64_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sefield::sample_max(params, sefield::RngStream::replicate(1, k++)));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FieldMax)->RangeMultiplier(4)->Range(256, 16384)->Unit(benchmark::kMillisecond);

void BM_FieldDense(benchmark::State& state) {
  const auto params = sefield::make_field_params(state.range(0), 0.2);
  std::uint64_t k = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(sefield::sample_field_dense(params, sefield::RngStream::replicate(1, k++), 1 << 16));
}
BENCHMARK(BM_FieldDense)->Arg(64)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_CriticalDraw(benchmark::State& state) {
  const double lambda = static_cast<double>(state.range(0)) / 4.0;
  const sefield::CriticalLimitSampler sampler(lambda, 0.01, 20000);
  sefield::RngStream s(7);
  for (auto _ : state) benchmark::DoNotOptimize(sampler(s));
}
BENCHMARK(BM_CriticalDraw)->Arg(1)->Arg(4)->Arg(8)->Unit(benchmark::kMicrosecond);

void BM_ChenStein(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sefield::chen_stein_report(state.range(0), 0.3, 0.0, 1.0));
}
BENCHMARK(BM_ChenStein)->Arg(1000)->Arg(1000000);

void BM_SpectrumVerify(benchmark::State& state) {
  const auto spec = sefield::make_pair_matrix_spec(state.range(0), 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(sefield::verify_spectrum(spec, 1e-9));
}
BENCHMARK(BM_SpectrumVerify)->DenseRange(6, 12, 3)->Unit(benchmark::kMillisecond);

void BM_SampleCorr(benchmark::State& state) {
  const sefield::PopulationSpec pop{state.range(0), 200, 0.3, sefield::MarginalSpec::standard_normal()};
  const auto d = sefield::generate_dataset(pop, sefield::RngStream::replicate(3, 0));
  for (auto _ : state) benchmark::DoNotOptimize(sefield::max_sample_corr(d));
}
BENCHMARK(BM_SampleCorr)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
