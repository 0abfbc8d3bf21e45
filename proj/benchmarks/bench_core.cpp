#include <benchmark/benchmark.h>

#include "hcube/bounds.hpp"
#include "hcube/extremal.hpp"
#include "hcube/special.hpp"
#include "hcube/verify.hpp"

using namespace hcube;

static void BM_NoiseApply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CubeFunction f = random_function(n, FunctionModel::LogUniform, 1);
  const NoiseParam eps(0.1);
  for (auto _ : state) benchmark::DoNotOptimize(noise_apply(f, eps));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.size()));
}
BENCHMARK(BM_NoiseApply)->DenseRange(8, 20, 4);

static void BM_Kappa(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    x += 0.001;
    if (x > 1.0) x = 0.001;
    benchmark::DoNotOptimize(kappa_2q(x, 0.1, 3.0));
  }
}
BENCHMARK(BM_Kappa);

static void BM_Psi(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    x += 0.001;
    if (x > 1.0) x = 0.001;
    benchmark::DoNotOptimize(psi_2q(x, 0.1, 3.0));
  }
}
BENCHMARK(BM_Psi);

static void BM_AllChecks(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CubeFunction f = random_function(n, FunctionModel::LogUniform, 2);
  for (auto _ : state) benchmark::DoNotOptimize(run_checks(f, 0.1, 2.0));
}
BENCHMARK(BM_AllChecks)->Arg(4)->Arg(8)->Arg(12);

static void BM_BigM(benchmark::State& state) {
  const double q = 2.0, N = 0.2, eps = 0.1;
  for (auto _ : state) benchmark::DoNotOptimize(big_m({0.0, N + 1.0 / q}, q, N, eps));
}
BENCHMARK(BM_BigM)->Unit(benchmark::kMillisecond);

static void BM_TightnessAnalytic(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto kind = state.range(1) == 0 ? TightnessKind::Renyi2 : TightnessKind::Nhc;
  for (auto _ : state) benchmark::DoNotOptimize(tightness_instance(kind, 2.0, 0.1, 0.5, n));
}
BENCHMARK(BM_TightnessAnalytic)->Args({200, 0})->Args({200, 1})->Args({1000, 1})->Unit(benchmark::kMillisecond);

static void BM_BallEigenvalue(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto pts = hamming_ball_points(n, n / 3);
  for (auto _ : state) benchmark::DoNotOptimize(max_induced_eigenvalue(n, pts));
}
BENCHMARK(BM_BallEigenvalue)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
