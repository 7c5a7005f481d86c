#include <benchmark/benchmark.h>

#include <random>

#include "salaffect/cca.hpp"
#include "salaffect/stats.hpp"

namespace {

std::vector<double> gaussian(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

void BM_Pearson(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = gaussian(n, 1);
  auto y = gaussian(n, 2);
  for (std::size_t i = 0; i < n; ++i) y[i] += 0.3 * x[i];
  for (auto _ : state) benchmark::DoNotOptimize(salaffect::pearson(x, y));
}
BENCHMARK(BM_Pearson)->Arg(500)->Arg(30000);

void BM_PValue(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(salaffect::p_value_two_tailed(0.129, 527));
}
BENCHMARK(BM_PValue);

// frame-level saliency-vs-AU shape: rows x (2 | 18)
void BM_Cca(benchmark::State& state) {
  const auto rows = static_cast<std::size_t>(state.range(0));
  const auto q = static_cast<std::size_t>(state.range(1));
  std::vector<std::string> xn{"area", "regions"};
  std::vector<std::string> yn;
  for (std::size_t j = 0; j < q; ++j) yn.push_back("y" + std::to_string(j));
  const salaffect::DataMatrix x(xn, rows, gaussian(rows * 2, 3));
  const salaffect::DataMatrix y(yn, rows, gaussian(rows * q, 4));
  for (auto _ : state) benchmark::DoNotOptimize(salaffect::cca(x, y));
}
BENCHMARK(BM_Cca)->Args({500, 18})->Args({30000, 18});

}  // namespace
