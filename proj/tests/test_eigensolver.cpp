#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "mathieu/dense_jacobi.hpp"
#include "mathieu/eigen_tridiag.hpp"
#include "mathieu/lanczos.hpp"
#include "mathieu/operators.hpp"

using namespace mathieu;

namespace {

constexpr double kPi = std::numbers::pi;

SymTridiagonal free_jacobi(int n) {
  SymTridiagonal T;
  T.diag.assign(static_cast<std::size_t>(n), 0.0);
  T.offdiag.assign(static_cast<std::size_t>(n - 1), 1.0);
  return T;
}

PeriodicOperator free_ring(int n) {
  PeriodicOperator P;
  P.tridiag = free_jacobi(n);
  P.corner = 1.0;
  return P;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

TEST_CASE("sturm counts agree with the explicit free spectrum") {
  const SymTridiagonal T = free_jacobi(3);  // eigenvalues -sqrt2, 0, sqrt2
  CHECK(sturm_count(T, -2.0) == 0);
  CHECK(sturm_count(T, -0.5) == 1);
  CHECK(sturm_count(T, 0.5) == 2);
  CHECK(sturm_count(T, 3.0) == 3);
  // an exact eigenvalue hit must not crash or drift outside the bracket;
  // which side the clamped pivot lands on is not part of the contract
  const int at_zero = sturm_count(T, 0.0);
  CHECK(at_zero >= 1);
  CHECK(at_zero <= 2);
}

TEST_CASE("sturm counting refuses split matrices") {
  SymTridiagonal T = free_jacobi(4);
  T.offdiag[1] = 0.0;
  CHECK_THROWS_AS((void)sturm_count(T, 0.0), SplitMatrixError);
}

TEST_CASE("gershgorin interval encloses the free spectrum") {
  const auto [lo, hi] = gershgorin_interval(free_jacobi(50));
  CHECK(lo <= -2.0 + 1e-12);
  CHECK(hi >= 2.0 - 1e-12);
}

TEST_CASE("bisection reproduces the free spectrum to the requested tolerance") {
  const int n = 100;
  const SymTridiagonal T = free_jacobi(n);
  const Spectrum s = eigenvalues_bisection(T, 0, n - 1, 1e-12);
  REQUIRE(static_cast<int>(s.values.size()) == n);
  for (int r = 0; r < n; ++r) {
    const double want = 2.0 * std::cos((r + 1) * kPi / (n + 1.0));
    CHECK(std::fabs(s.values[static_cast<std::size_t>(r)] - want) <= 1e-11);
  }
  // descending by construction
  for (int r = 1; r < n; ++r)
    CHECK(s.values[static_cast<std::size_t>(r - 1)] >= s.values[static_cast<std::size_t>(r)]);
}

TEST_CASE("bisection rank window selects an inner slice") {
  const SymTridiagonal T = free_jacobi(9);
  const Spectrum s = eigenvalues_bisection(T, 2, 4, 1e-13);
  REQUIRE(s.values.size() == 3);
  for (int i = 0; i < 3; ++i) {
    const double want = 2.0 * std::cos((i + 3) * kPi / 10.0);
    CHECK(s.values[static_cast<std::size_t>(i)] == doctest::Approx(want).epsilon(1e-12));
  }
  CHECK_THROWS_AS((void)eigenvalues_bisection(T, 4, 2), ParameterError);
  CHECK_THROWS_AS((void)eigenvalues_bisection(T, 0, 9), ParameterError);
}

TEST_CASE("inverse iteration returns the known small eigenvector") {
  // free 3-site chain: top pair is sqrt2 with vector (1, sqrt2, 1)/2
  const SymTridiagonal T = free_jacobi(3);
  const Eigenpair p = eigenvector_inverse_iteration(T, std::numbers::sqrt2);
  REQUIRE(p.vector.size() == 3);
  const double s = p.vector[1] > 0.0 ? 1.0 : -1.0;  // fix the sign convention
  CHECK(s * p.vector[0] == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(s * p.vector[1] == doctest::Approx(std::numbers::sqrt2 / 2.0).epsilon(1e-10));
  CHECK(s * p.vector[2] == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(p.value == doctest::Approx(std::numbers::sqrt2).epsilon(1e-12));
  CHECK(p.index_from_top == 0);
}

TEST_CASE("inverse iteration residuals sit near machine precision") {
  const OperatorParams params = make_params_rational(1, 200, 1.0, 0.0, 200);
  const SymTridiagonal T = build_finite(params);
  const Spectrum s = eigenvalues_bisection(T, 0, 5, 1e-12);
  const std::vector<Eigenpair> pairs = eigenvectors_for_values(T, s.values);
  for (const Eigenpair& p : pairs) {
    const ResidualNorms rn = residual(T, p.value, p.vector);
    CHECK(rn.l2 <= 1e-11);
    CHECK(dot(p.vector, p.vector) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("clustered eigenvalues come out orthogonal") {
  // twin end defects on a 16-chain: the top pair is split ~7e-5, far below
  // the cluster width, so the second solve must orthogonalize against the first
  SymTridiagonal T;
  T.diag.assign(16, 0.0);
  T.offdiag.assign(15, 1.0);
  T.diag.front() = 2.0;
  T.diag.back() = 2.0;
  const Spectrum s = eigenvalues_bisection(T, 0, 1, 1e-13);
  const double split = std::fabs(s.values[0] - s.values[1]);
  CHECK(split <= 1e-3);
  CHECK(split >= 1e-6);
  const std::vector<Eigenpair> pairs = eigenvectors_for_values(T, s.values, 7);
  CHECK(std::fabs(dot(pairs[0].vector, pairs[1].vector)) <= 1e-8);
  for (const Eigenpair& p : pairs) CHECK(residual(T, p.value, p.vector).l2 <= 1e-8);
}

TEST_CASE("dense jacobi agrees with bisection on a full window") {
  const OperatorParams params = make_params_rational(1, 64, 1.0, 0.2, 64);
  const SymTridiagonal T = build_finite(params);
  const Spectrum dense = dense_eig_small(to_dense(T), true);
  const Spectrum bis = eigenvalues_bisection(T, 0, 63, 1e-12);
  REQUIRE(dense.values.size() == 64);
  for (int r = 0; r < 64; ++r)
    CHECK(dense.values[static_cast<std::size_t>(r)] ==
          doctest::Approx(bis.values[static_cast<std::size_t>(r)]).epsilon(1e-10));
  // eigenvectors: orthonormal with tiny residuals, against the tridiagonal form
  for (int r = 0; r < 64; r += 9) {
    const Eigenpair& p = dense.pairs[static_cast<std::size_t>(r)];
    CHECK(residual(T, p.value, p.vector).l2 <= 1e-10);
    CHECK(dot(p.vector, p.vector) == doctest::Approx(1.0).epsilon(1e-12));
    for (int q = 0; q < r; q += 9)
      CHECK(std::fabs(dot(p.vector, dense.pairs[static_cast<std::size_t>(q)].vector)) <= 1e-10);
  }
}

TEST_CASE("dense jacobi caps the matrix size") {
  DenseSym M = DenseSym::zero(1);
  M.at(0, 0) = 3.0;
  const Spectrum s = dense_eig_small(M, true);
  CHECK(s.values[0] == 3.0);
  CHECK_THROWS_AS((void)dense_eig_small(DenseSym::zero(1025), false), ParameterError);
}

TEST_CASE("lanczos resolves a triply repeated extreme across restarts") {
  // free 8-ring spectrum: {2, sqrt2 x2, 0 x2, -sqrt2 x2, -2}
  const PeriodicOperator P = free_ring(8);
  LanczosOptions opts;
  opts.tol = 1e-10;
  const Spectrum s = extreme_eigs_lanczos(P, 2, Extreme::top, opts);
  REQUIRE(s.values.size() == 2);
  CHECK(s.values[0] == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(s.values[1] == doctest::Approx(std::numbers::sqrt2).epsilon(1e-9));
  for (const Eigenpair& p : s.pairs) CHECK(residual(P, p.value, p.vector).l2 <= 1e-9);
}

TEST_CASE("lanczos matches the dense oracle on the cosine ring") {
  const OperatorParams params = make_params_rational(1, 200, 1.0, 0.0, 200);
  const PeriodicOperator P = build_periodic(params);
  const Spectrum dense = dense_eig_small(to_dense(P), false);
  LanczosOptions opts;
  opts.tol = 1e-9;
  opts.seed = 3;
  const Spectrum top = extreme_eigs_lanczos(P, 20, Extreme::top, opts);
  for (int r = 0; r < 20; ++r)
    CHECK(std::fabs(top.values[static_cast<std::size_t>(r)] -
                    dense.values[static_cast<std::size_t>(r)]) <= 1e-8);
  const Spectrum bot = extreme_eigs_lanczos(P, 5, Extreme::bottom, opts);
  for (int r = 0; r < 5; ++r)
    CHECK(std::fabs(bot.values[static_cast<std::size_t>(r)] -
                    dense.values[static_cast<std::size_t>(195 + r)]) <= 1e-8);
  CHECK(bot.pairs[0].index_from_top == 195);
}

TEST_CASE("lanczos validates rank and tolerance") {
  const PeriodicOperator P = free_ring(16);
  CHECK_THROWS_AS((void)extreme_eigs_lanczos(P, 0, Extreme::top), ParameterError);
  CHECK_THROWS_AS((void)extreme_eigs_lanczos(P, 5, Extreme::top), ParameterError);
  LanczosOptions bad;
  bad.tol = 0.0;
  CHECK_THROWS_AS((void)extreme_eigs_lanczos(P, 2, Extreme::top, bad), ParameterError);
}

TEST_CASE("residual norms detect an exact eigenpair of the ring") {
  // constant vector on the free ring: eigenvalue 2
  const PeriodicOperator P = free_ring(12);
  const std::vector<double> ones(12, 1.0);
  const ResidualNorms rn = residual(P, 2.0, ones);
  CHECK(rn.sup == 0.0);
  CHECK(rn.l2 == 0.0);
  CHECK_THROWS_AS((void)residual(P, 1.0, std::vector<double>(11, 1.0)), DimensionError);
  CHECK_THROWS_AS((void)residual(P, 1.0, std::vector<double>(12, 0.0)), DegenerateVectorError);
}
