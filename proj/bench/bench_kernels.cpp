// Compares the OpenMP kernels against the serial reference implementations.
#include <benchmark/benchmark.h>

#include <random>

#include "ragc/matrix.hpp"
#include "ragc/matrix_ref.hpp"

using ragc::DenseMatrix;

namespace {
DenseMatrix random_matrix(std::size_t r, std::size_t c, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  DenseMatrix m(r, c);
  for (std::size_t i = 0; i < m.size(); ++i) m.data()[i] = dist(rng);
  return m;
}
}  // namespace

static void BM_matmul_parallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto a = random_matrix(n, n, 1), b = random_matrix(n, n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(ragc::matmul(a, b));
}
BENCHMARK(BM_matmul_parallel)->Arg(128)->Arg(256)->Arg(512);

static void BM_matmul_serial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto a = random_matrix(n, n, 1), b = random_matrix(n, n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(ragc::reference::matmul(a, b));
}
BENCHMARK(BM_matmul_serial)->Arg(128)->Arg(256)->Arg(512);

static void BM_matmul_nt_parallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto a = random_matrix(n, 64, 1), b = random_matrix(n, 64, 2);
  for (auto _ : state) benchmark::DoNotOptimize(ragc::matmul_nt(a, b));
}
BENCHMARK(BM_matmul_nt_parallel)->Arg(256)->Arg(512)->Arg(1024);

static void BM_matmul_nt_serial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto a = random_matrix(n, 64, 1), b = random_matrix(n, 64, 2);
  for (auto _ : state) benchmark::DoNotOptimize(ragc::reference::matmul_nt(a, b));
}
BENCHMARK(BM_matmul_nt_serial)->Arg(256)->Arg(512)->Arg(1024);

static void BM_exp_elem_parallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto a = random_matrix(n, n, 3);
  for (auto _ : state) benchmark::DoNotOptimize(ragc::exp_elem(a));
}
BENCHMARK(BM_exp_elem_parallel)->Arg(256)->Arg(1024);

static void BM_exp_elem_serial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto a = random_matrix(n, n, 3);
  for (auto _ : state) benchmark::DoNotOptimize(ragc::reference::exp_elem(a));
}
BENCHMARK(BM_exp_elem_serial)->Arg(256)->Arg(1024);

static void BM_minmax_parallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto a = random_matrix(n, n, 4);
  for (auto _ : state) benchmark::DoNotOptimize(ragc::minmax_normalize(a));
}
BENCHMARK(BM_minmax_parallel)->Arg(256)->Arg(1024);

static void BM_minmax_serial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto a = random_matrix(n, n, 4);
  for (auto _ : state) benchmark::DoNotOptimize(ragc::reference::minmax_normalize(a));
}
BENCHMARK(BM_minmax_serial)->Arg(256)->Arg(1024);

BENCHMARK_MAIN();
