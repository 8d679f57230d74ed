// SPDX-License-Identifier: Apache-2.0
#include <random>

#include <benchmark/benchmark.h>
#include <pdq/lloyd.hpp>
#include <pdq/mobius.hpp>
#include <pdq/oned.hpp>
#include <pdq/quadrature.hpp>
#include <pdq/rng.hpp>

namespace {

pdq::Quantizer make_quantizer(std::size_t n, const pdq::Region& region) {
  std::mt19937_64 rng(1234);
  pdq::Quantizer q;
  for (std::size_t i = 0; i < n; ++i) {
    q.points.push_back({pdq::uniform_in(rng, 0.0, region.width()),
                        pdq::uniform_in(rng, 0.0, region.height())});
    q.heights.push_back(pdq::uniform_in(rng, 0.2, 3.0));
  }
  return q;
}

void bm_classify(benchmark::State& state) {
  const pdq::Region region = pdq::Region::rectangle(10.0, 10.0);
  const pdq::Quantizer q = make_quantizer(state.range(0), region);
  const pdq::DistortionParams params{3.5, 1.0};
  std::mt19937_64 rng(7);
  for (auto _ : state) {
    const pdq::Point omega{pdq::uniform_in(rng, 0.0, 10.0), pdq::uniform_in(rng, 0.0, 10.0)};
    benchmark::DoNotOptimize(pdq::classify(omega, q, params));
  }
}
BENCHMARK(bm_classify)->Arg(16)->Arg(100);

void bm_grid_partition(benchmark::State& state) {
  const pdq::Region region = pdq::Region::rectangle(10.0, 10.0);
  const pdq::Quantizer q = make_quantizer(16, region);
  const pdq::Density density = pdq::Density::uniform(region);
  const pdq::DistortionParams params{3.5, 1.0};
  const int resolution = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pdq::grid_partition(q, region, density, params, resolution));
  }
}
BENCHMARK(bm_grid_partition)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

void bm_lloyd_round(benchmark::State& state) {
  const pdq::Region region = pdq::Region::rectangle(10.0, 10.0);
  const pdq::Density density = pdq::Density::uniform(region);
  const pdq::DistortionParams params{3.5, 1.0};
  const pdq::Quantizer q = make_quantizer(16, region);
  pdq::LloydConfig config;
  config.max_iters = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pdq::lloyd_run(q, region, density, params, config));
  }
}
BENCHMARK(bm_lloyd_round)->Unit(benchmark::kMillisecond);

void bm_minimizer(benchmark::State& state) {
  const double gamma = static_cast<double>(state.range(0)) / 2.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pdq::g_numeric(gamma));
  }
}
BENCHMARK(bm_minimizer)->Arg(2)->Arg(3)->Arg(7);

void bm_fast_pow(benchmark::State& state) {
  const pdq::PowExp pw(3.5);
  double t = 1.0000001;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pw(t));
    t += 1e-9;
  }
}
BENCHMARK(bm_fast_pow);

void bm_std_pow(benchmark::State& state) {
  double t = 1.0000001;
  for (auto _ : state) {
    benchmark::DoNotOptimize(std::pow(t, 3.5));
    t += 1e-9;
  }
}
BENCHMARK(bm_std_pow);

}  // namespace

BENCHMARK_MAIN();
