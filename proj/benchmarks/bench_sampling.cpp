#include <benchmark/benchmark.h>

#include "powersph/powersph.hpp"

namespace {

constexpr std::size_t kDim = 64;
constexpr std::size_t kBatch = 100;

powersph::Direction fixed_mu() {
  powersph::RandomStream rng(3);
  return powersph::Direction::random(kDim, rng);
}

void BM_PowerSphericalBatch(benchmark::State& state) {
  const powersph::PowerSphericalParams p(fixed_mu(), static_cast<double>(state.range(0)));
  powersph::RandomStream rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(powersph::sample(p, kBatch, rng));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(kBatch));
}

void BM_VmfBatch(benchmark::State& state) {
  const powersph::VonMisesFisherParams q(fixed_mu(), static_cast<double>(state.range(0)));
  powersph::RandomStream rng(2);
  long rejections = 0;
  for (auto _ : state) {
    auto batch = powersph::sample_vmf(q, kBatch, rng);
    for (const auto& s : batch) rejections += s.rejections;
    benchmark::DoNotOptimize(batch);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(kBatch));
  state.counters["rejections_per_sample"] = benchmark::Counter(
      static_cast<double>(rejections) / static_cast<double>(state.iterations() * kBatch));
}

void BM_PowerSphericalGradient(benchmark::State& state) {
  const powersph::PowerSphericalParams p(fixed_mu(), static_cast<double>(state.range(0)));
  powersph::RandomStream rng(4);
  for (auto _ : state) benchmark::DoNotOptimize(powersph::sample(p, kBatch, rng, true));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(kBatch));
}

void BM_LogBesselI(benchmark::State& state) {
  const double v = static_cast<double>(kDim) / 2.0 - 1.0;
  const double z = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(powersph::specfun::log_bessel_i(v, z));
}

}  // namespace

BENCHMARK(BM_PowerSphericalBatch)->RangeMultiplier(10)->Range(1, 10000);
BENCHMARK(BM_VmfBatch)->RangeMultiplier(10)->Range(1, 10000);
BENCHMARK(BM_PowerSphericalGradient)->RangeMultiplier(10)->Range(1, 10000);
BENCHMARK(BM_LogBesselI)->Arg(1)->Arg(30)->Arg(1000)->Arg(100000);

BENCHMARK_MAIN();
