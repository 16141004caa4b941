#include <benchmark/benchmark.h>

#include "netstab/fixtures.hpp"
#include "netstab/measures.hpp"
#include "netstab/montecarlo.hpp"

namespace {

using namespace netstab;

SampleMatrix make_sample(int vars, int n) {
  RandomStream rng(1);
  return draw_mixture(MixtureModel::centered(Matrix::Identity(vars, vars), 3, 0.5), n, rng);
}

void BM_PearsonReference(benchmark::State& state) {
  const auto s = make_sample(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(reference::pearson_sample(s));
}

void BM_PearsonKernel(benchmark::State& state) {
  const auto s = make_sample(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(pearson_sample(s));
}

void BM_SignReference(benchmark::State& state) {
  const auto s = make_sample(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const Vector c = Vector::Zero(s.variables());
  for (auto _ : state) benchmark::DoNotOptimize(reference::sign_sample(s, c));
}

void BM_SignKernel(benchmark::State& state) {
  const auto s = make_sample(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const Vector c = Vector::Zero(s.variables());
  for (auto _ : state) benchmark::DoNotOptimize(sign_sample(s, c));
}

ExperimentConfig bench_config() {
  ExperimentConfig c;
  c.characteristic = Characteristic::MaxClique;
  c.n = 100;
  c.replications = 50;
  c.gamma_grid = {0.0, 0.5, 1.0};
  c.thresholds = {0.1, 0.3};
  return c;
}

void BM_ExperimentSerial(benchmark::State& state) {
  const auto c = bench_config();
  const Matrix lambda = load_fixture("uk2010");
  for (auto _ : state) benchmark::DoNotOptimize(reference::run_experiment(c, lambda));
}

void BM_ExperimentParallel(benchmark::State& state) {
  const auto c = bench_config();
  const Matrix lambda = load_fixture("uk2010");
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(c, lambda, static_cast<int>(state.range(0))));
}

}  // namespace

BENCHMARK(BM_PearsonReference)->Args({50, 250})->Args({50, 10000});
BENCHMARK(BM_PearsonKernel)->Args({50, 250})->Args({50, 10000});
BENCHMARK(BM_SignReference)->Args({50, 250})->Args({50, 10000});
BENCHMARK(BM_SignKernel)->Args({50, 250})->Args({50, 10000});
BENCHMARK(BM_ExperimentSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExperimentParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
