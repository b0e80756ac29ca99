#include <benchmark/benchmark.h>

#include "weitz/clifford.hpp"
#include "weitz/linalg.hpp"
#include "weitz/random.hpp"
#include "weitz/weitzenboeck.hpp"

namespace {

using namespace weitz;

void BM_KnProduct(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto& ctx = context(n);
  const auto a = random_form(1, ctx, 2, 2);
  const auto b = random_form(2, ctx, n / 2 - 1, n / 2 - 1);
  for (auto _ : state) benchmark::DoNotOptimize(kn_product(a, b));
}
BENCHMARK(BM_KnProduct)->DenseRange(4, 8, 2);

void BM_NpDefinition(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto w = random_bianchi_22(3, std::nullopt, context(n));
  for (auto _ : state) benchmark::DoNotOptimize(np_definition(w, n / 2));
}
BENCHMARK(BM_NpDefinition)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_NpFormula(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto w = random_bianchi_22(3, std::nullopt, context(n));
  for (auto _ : state) benchmark::DoNotOptimize(np_formula(w, n / 2));
}
BENCHMARK(BM_NpFormula)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_CliffordMul(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto& ctx = context(n);
  Rng rng(4);
  const auto size = Eigen::Index{1} << n;
  const CliffordElement a(ctx, gaussian_matrix(rng, size, 1).col(0));
  const CliffordElement b(ctx, gaussian_matrix(rng, size, 1).col(0));
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_CliffordMul)->DenseRange(4, 8, 2);

void BM_Jacobi(benchmark::State& state) {
  const auto size = static_cast<Eigen::Index>(state.range(0));
  Rng rng(5);
  const Eigen::MatrixXd a = gaussian_matrix(rng, size, size);
  const Eigen::MatrixXd m = a + a.transpose();
  for (auto _ : state) benchmark::DoNotOptimize(jacobi_eigen(m));
}
BENCHMARK(BM_Jacobi)->Arg(6)->Arg(20)->Arg(70);

}  // namespace
BENCHMARK_MAIN();
