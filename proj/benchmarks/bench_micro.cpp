// Microbenchmarks for the distance and mean kernels.
// Run: ./spdkit_bench [--benchmark_filter=...]

#include <benchmark/benchmark.h>

#include "spdkit/divergence.hpp"
#include "spdkit/mean.hpp"
#include "spdkit/random.hpp"

namespace {

using spdkit::SpdMatrix;

void BM_SDiv(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SpdMatrix a = spdkit::random_spd(n, 1, 100.0);
  SpdMatrix b = spdkit::random_spd(n, 2, 100.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(spdkit::s_div(a, b));
  }
}
BENCHMARK(BM_SDiv)->Arg(16)->Arg(32)->Arg(64)->Arg(128)->Arg(256);

void BM_Riemannian(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SpdMatrix a = spdkit::random_spd(n, 1, 100.0);
  SpdMatrix b = spdkit::random_spd(n, 2, 100.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(spdkit::riemannian(a, b));
  }
}
BENCHMARK(BM_Riemannian)->Arg(16)->Arg(32)->Arg(64)->Arg(128)->Arg(256);

void BM_LogEuclidean(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SpdMatrix a = spdkit::random_spd(n, 1, 100.0);
  SpdMatrix b = spdkit::random_spd(n, 2, 100.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(spdkit::log_euclidean(a, b));
  }
}
BENCHMARK(BM_LogEuclidean)->Arg(16)->Arg(32)->Arg(64)->Arg(128);

spdkit::MeanProblem bundle_problem(int n, int m) {
  spdkit::MeanProblem problem;
  for (int i = 0; i < m; ++i) {
    problem.matrices.push_back(spdkit::random_spd(n, 100 + i, 100.0));
  }
  return problem;
}

void BM_SMean(benchmark::State& state) {
  auto problem = bundle_problem(static_cast<int>(state.range(0)),
                                static_cast<int>(state.range(1)));
  spdkit::SolverConfig config;
  config.tol = 1e-10;
  for (auto _ : state) {
    benchmark::DoNotOptimize(spdkit::s_mean(problem, config));
  }
}
BENCHMARK(BM_SMean)->Args({16, 10})->Args({32, 10})->Args({64, 10});

void BM_KarcherMean(benchmark::State& state) {
  auto problem = bundle_problem(static_cast<int>(state.range(0)),
                                static_cast<int>(state.range(1)));
  spdkit::SolverConfig config;
  config.tol = 1e-10;
  for (auto _ : state) {
    benchmark::DoNotOptimize(spdkit::karcher_mean(problem, config));
  }
}
BENCHMARK(BM_KarcherMean)->Args({16, 10})->Args({32, 10});

void BM_LeMean(benchmark::State& state) {
  auto problem = bundle_problem(static_cast<int>(state.range(0)),
                                static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(spdkit::le_mean(problem));
  }
}
BENCHMARK(BM_LeMean)->Args({16, 10})->Args({32, 10})->Args({64, 10});

}  // namespace

BENCHMARK_MAIN();
