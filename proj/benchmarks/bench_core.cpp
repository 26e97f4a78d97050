#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "mathieu/dense_jacobi.hpp"
#include "mathieu/edge.hpp"
#include "mathieu/eigen_tridiag.hpp"
#include "mathieu/hermite.hpp"
#include "mathieu/lanczos.hpp"
#include "mathieu/operators.hpp"

namespace {

mathieu::OperatorParams params_for(int n) {
  return mathieu::make_params_rational(1, n, 1.0, 0.0, n);
}

void bm_build_periodic(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const mathieu::OperatorParams p = params_for(n);
  for (auto _ : state) benchmark::DoNotOptimize(mathieu::build_periodic(p));
}
BENCHMARK(bm_build_periodic)->Arg(256)->Arg(4096);

void bm_apply_periodic(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const mathieu::PeriodicOperator P = mathieu::build_periodic(params_for(n));
  const std::vector<double> v(static_cast<std::size_t>(n), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(mathieu::apply(P, v));
}
BENCHMARK(bm_apply_periodic)->Arg(256)->Arg(4096);

void bm_sturm_count(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const mathieu::SymTridiagonal T = mathieu::build_finite(params_for(n));
  for (auto _ : state) benchmark::DoNotOptimize(mathieu::sturm_count(T, 1.0));
}
BENCHMARK(bm_sturm_count)->Arg(256)->Arg(4096);

void bm_bisection_top8(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const mathieu::SymTridiagonal T = mathieu::build_finite(params_for(n));
  for (auto _ : state) benchmark::DoNotOptimize(mathieu::eigenvalues_bisection(T, 0, 7));
}
BENCHMARK(bm_bisection_top8)->Arg(256)->Arg(4096);

void bm_lanczos_top4(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const mathieu::PeriodicOperator P = mathieu::build_periodic(params_for(n));
  mathieu::LanczosOptions opts;
  opts.seed = 7;
  for (auto _ : state)
    benchmark::DoNotOptimize(mathieu::extreme_eigs_lanczos(P, 4, mathieu::Extreme::top, opts));
}
BENCHMARK(bm_lanczos_top4)->Arg(256)->Arg(2048);

void bm_dense_jacobi(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const mathieu::DenseSym M = mathieu::to_dense(mathieu::build_periodic(params_for(n)));
  for (auto _ : state) benchmark::DoNotOptimize(mathieu::dense_eig_small(M, false));
}
BENCHMARK(bm_dense_jacobi)->Arg(32)->Arg(128);

void bm_sample_hermite(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const double g = mathieu::gamma_of(params_for(n));
  for (auto _ : state)
    benchmark::DoNotOptimize(mathieu::sample_periodic(6, g, n, 0.0, false));
}
BENCHMARK(bm_sample_hermite)->Arg(256)->Arg(4096);

void bm_infinite_residual(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const mathieu::OperatorParams p = params_for(n);
  const double g = mathieu::gamma_of(p);
  const double window = std::sqrt(3.0 / g) + 10.0 / std::sqrt(g) + 1.0;
  for (auto _ : state)
    benchmark::DoNotOptimize(mathieu::infinite_residual(2, p, window, mathieu::Edge::positive));
}
BENCHMARK(bm_infinite_residual)->Arg(256)->Arg(4096);

}  // namespace

BENCHMARK_MAIN();
