// Serial reference kernels against their OpenMP counterparts, at the shapes
// the solvers hit: X is 2n x 2p, A is 2n x 2n.

#include <benchmark/benchmark.h>

#include "spopt/kernels.hpp"
#include "spopt/rng.hpp"

namespace {

using spopt::Matrix;
namespace serial = spopt::kernels::serial;
namespace parallel = spopt::kernels::parallel;

Matrix panel(benchmark::State& state, std::uint64_t seed) {
  spopt::Rng rng(seed);
  return rng.gaussian_matrix(2 * state.range(0), 2 * state.range(1));
}

template <bool Parallel>
void BM_Crossprod(benchmark::State& state) {
  const Matrix x = panel(state, 1);
  for (auto _ : state) {
    Matrix g = Parallel ? parallel::crossprod(x, x) : serial::crossprod(x, x);
    benchmark::DoNotOptimize(g.data());
  }
}

template <bool Parallel>
void BM_Matmul(benchmark::State& state) {
  spopt::Rng rng(2);
  const Matrix a = rng.gaussian_matrix(2 * state.range(0), 2 * state.range(0));
  const Matrix x = panel(state, 3);
  for (auto _ : state) {
    Matrix ax = Parallel ? parallel::matmul(a, x) : serial::matmul(a, x);
    benchmark::DoNotOptimize(ax.data());
  }
}

template <bool Parallel>
void BM_FrobInner(benchmark::State& state) {
  const Matrix a = panel(state, 4);
  const Matrix b = panel(state, 5);
  for (auto _ : state) {
    double v = Parallel ? parallel::frob_inner(a, b) : serial::frob_inner(a, b);
    benchmark::DoNotOptimize(v);
  }
}

template <bool Parallel>
void BM_Jmul(benchmark::State& state) {
  const Matrix a = panel(state, 6);
  for (auto _ : state) {
    Matrix j = Parallel ? parallel::jmul(a) : serial::jmul(a);
    benchmark::DoNotOptimize(j.data());
  }
}

void shapes(benchmark::internal::Benchmark* b) {
  b->Args({20, 5})->Args({100, 20})->Args({500, 5})->Args({1000, 20});
}

}  // namespace

BENCHMARK(BM_Crossprod<false>)->Apply(shapes);
BENCHMARK(BM_Crossprod<true>)->Apply(shapes);
BENCHMARK(BM_Matmul<false>)->Apply(shapes);
BENCHMARK(BM_Matmul<true>)->Apply(shapes);
BENCHMARK(BM_FrobInner<false>)->Apply(shapes);
BENCHMARK(BM_FrobInner<true>)->Apply(shapes);
BENCHMARK(BM_Jmul<false>)->Apply(shapes);
BENCHMARK(BM_Jmul<true>)->Apply(shapes);

BENCHMARK_MAIN();
