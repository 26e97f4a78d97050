#include "mathieu/eigen_tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "detail.hpp"

namespace mathieu {

namespace {

void require_unreduced(const SymTridiagonal& T) {
  for (double b : T.offdiag)
    if (b == 0.0)
      throw SplitMatrixError("zero off-diagonal entry: split the matrix and deflate first");
}

double inf_norm(const SymTridiagonal& T) {
  const int n = T.n();
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = std::fabs(T.diag[i]);
    if (i > 0) row += std::fabs(T.offdiag[i - 1]);
    if (i + 1 < n) row += std::fabs(T.offdiag[i]);
    s = std::max(s, row);
  }
  return s;
}

}  // namespace

int sturm_count(const SymTridiagonal& T, double x) {
  require_unreduced(T);
  const int n = T.n();
  if (n == 0) return 0;
  // smallest pivot magnitude we allow; keeps b^2/d finite after an exact hit
  const double pivmin = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  int count = 0;
  double d = T.diag[0] - x;
  if (std::fabs(d) < pivmin) d = -pivmin;
  if (d < 0.0) ++count;
  for (int i = 1; i < n; ++i) {
    d = (T.diag[i] - x) - T.offdiag[i - 1] * T.offdiag[i - 1] / d;
    if (std::fabs(d) < pivmin) d = -pivmin;
    if (d < 0.0) ++count;
  }
  return count;
}

std::pair<double, double> gershgorin_interval(const SymTridiagonal& T) {
  const int n = T.n();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::fabs(T.offdiag[i - 1]);
    if (i + 1 < n) r += std::fabs(T.offdiag[i]);
    lo = std::min(lo, T.diag[i] - r);
    hi = std::max(hi, T.diag[i] + r);
  }
  return {lo, hi};
}

Spectrum eigenvalues_bisection(const SymTridiagonal& T, int rank_lo, int rank_hi, double tol) {
  const int n = T.n();
  if (n < 1) throw DimensionError("eigenvalues_bisection: empty matrix");
  if (rank_lo < 0 || rank_hi < rank_lo || rank_hi >= n)
    throw ParameterError("eigenvalues_bisection: rank range must satisfy 0 <= lo <= hi < n");

  Spectrum out;
  out.method = SolveMethod::sturm_bisection;
  if (n == 1) {
    out.values.assign(1, T.diag[0]);
    return out;
  }
  require_unreduced(T);

  auto [glo, ghi] = gershgorin_interval(T);
  // widen a hair so the endpoint counts are 0 and n even after rounding
  const double pad = 1e-3 + 1e-12 * (std::fabs(glo) + std::fabs(ghi));
  glo -= pad;
  ghi += pad;
  if (tol <= 0.0) tol = 1e-10 * (ghi - glo);

  const double eps = std::numeric_limits<double>::epsilon();
  out.values.reserve(rank_hi - rank_lo + 1);
  for (int rank = rank_lo; rank <= rank_hi; ++rank) {
    const int k = n - rank;  // k-th smallest, 1-indexed
    double lo = glo, hi = ghi;
    // invariant: count(lo) < k <= count(hi)
    for (int it = 0; it < 220; ++it) {
      const double width = hi - lo;
      if (width <= tol || width <= 4.0 * eps * std::max(std::fabs(lo), std::fabs(hi))) break;
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;  // interval exhausted in floating point
      if (sturm_count(T, mid) < k)
        lo = mid;
      else
        hi = mid;
    }
    if (hi - lo > std::max(tol, 8.0 * eps * std::max(std::fabs(lo), std::fabs(hi))))
      throw ConvergenceError("eigenvalues_bisection: interval failed to contract to tolerance");
    out.values.push_back(0.5 * (lo + hi));
  }
  return out;
}

namespace {

// LU factorization of (T - lambda I) with partial pivoting.  Row swaps
// introduce a second superdiagonal; near-singular pivots are nudged to keep
// the solve finite, which is exactly what inverse iteration wants.
struct TridiagShiftedLU {
  int n;
  std::vector<double> low;    // multipliers
  std::vector<double> d0;     // main diagonal of U
  std::vector<double> d1;     // first superdiagonal of U
  std::vector<double> d2;     // second superdiagonal of U
  std::vector<char> swapped;  // pivot row exchanged at step i

  TridiagShiftedLU(const SymTridiagonal& T, double lambda)
      : n(T.n()), low(n, 0.0), d0(n, 0.0), d1(n, 0.0), d2(n, 0.0), swapped(n, 0) {
    const double scale = std::max(inf_norm(T), 1.0);
    const double tiny = std::numeric_limits<double>::epsilon() * scale;
    for (int i = 0; i < n; ++i) d0[i] = T.diag[i] - lambda;
    for (int i = 0; i + 1 < n; ++i) d1[i] = T.offdiag[i];

    for (int i = 0; i + 1 < n; ++i) {
      const double sub = T.offdiag[i];  // subdiagonal entry below the pivot
      if (std::fabs(d0[i]) >= std::fabs(sub)) {
        if (std::fabs(d0[i]) < tiny) d0[i] = (d0[i] < 0.0 ? -tiny : tiny);
        const double m = sub / d0[i];
        low[i] = m;
        d0[i + 1] -= m * d1[i];
      } else {
        // swap rows i and i+1; the swap spills a second superdiagonal entry
        swapped[i] = 1;
        const double m = d0[i] / sub;
        low[i] = m;
        d0[i] = sub;
        const double temp = d1[i];
        d1[i] = d0[i + 1];
        d0[i + 1] = temp - m * d0[i + 1];
        if (i + 2 < n) {
          d2[i] = d1[i + 1];
          d1[i + 1] = -m * d1[i + 1];
        }
      }
    }
    if (std::fabs(d0[n - 1]) < tiny) d0[n - 1] = (d0[n - 1] < 0.0 ? -tiny : tiny);
  }

  void solve(std::span<double> b) const {
    for (int i = 0; i + 1 < n; ++i) {
      if (swapped[i]) std::swap(b[i], b[i + 1]);
      b[i + 1] -= low[i] * b[i];
    }
    for (int i = n - 1; i >= 0; --i) {
      double acc = b[i];
      if (i + 1 < n) acc -= d1[i] * b[i + 1];
      if (i + 2 < n) acc -= d2[i] * b[i + 2];
      b[i] = acc / d0[i];
    }
  }
};

double rayleigh(const SymTridiagonal& T, std::span<const double> v) {
  std::vector<double> tv = apply(T, v);
  return detail::dot(v, tv) / detail::dot(v, v);
}

Eigenpair inverse_iteration_core(const SymTridiagonal& T, double lambda, std::uint64_t seed,
                                 std::span<const Eigenpair> ortho_against) {
  const int n = T.n();
  if (n < 1) throw DimensionError("eigenvector_inverse_iteration: empty matrix");
  if (n > 1) require_unreduced(T);

  Eigenpair out;
  if (n == 1) {
    out.value = T.diag[0];
    out.vector = {1.0};
    out.index_from_top = 0;
    return out;
  }

  const double scale = std::max(inf_norm(T), 1.0);
  const double target = 1e-8 * scale;
  const double floor = 16.0 * std::numeric_limits<double>::epsilon() * scale;
  TridiagShiftedLU lu(T, lambda);

  detail::SplitMix64 rng(seed ^ 0x243f6a8885a308d3ull);
  std::vector<double> v(n);
  rng.fill_symmetric(v);
  detail::scale(1.0 / detail::nrm2(v), v);

  // Kept past the guarantee: with an accurate isolated shift each extra solve
  // buys orders of magnitude, so polish until the residual stalls or bottoms
  // out.  Clustered shifts stall on the first polish pass and exit there.
  double best_res = std::numeric_limits<double>::infinity();
  double best_rho = lambda;
  std::vector<double> best_v;
  double prev_res = std::numeric_limits<double>::infinity();
  int polish = 0;
  for (int it = 0; it < 25; ++it) {
    lu.solve(v);
    for (const Eigenpair& p : ortho_against) {
      const double c = detail::dot(v, p.vector);
      detail::axpy(-c, p.vector, v);
    }
    const double nv = detail::nrm2(v);
    if (!(nv > 0.0) || !std::isfinite(nv)) {
      rng.fill_symmetric(v);  // solve collapsed onto the removed subspace
      detail::scale(1.0 / detail::nrm2(v), v);
      continue;
    }
    detail::scale(1.0 / nv, v);
    const double rho = rayleigh(T, v);
    std::vector<double> tv = mathieu::apply(T, v);
    detail::axpy(-rho, v, tv);
    const double res = detail::nrm2(tv);
    if (res < best_res) {
      best_res = res;
      best_rho = rho;
      best_v = v;
    }
    if (best_res <= target) {
      const bool stalled = res > 0.25 * prev_res;
      if (best_res <= floor || stalled || ++polish >= 4) {
        out.value = best_rho;
        out.vector = std::move(best_v);
        out.residual_l2 = best_res;
        // count just below the converged value: |rho - lambda| <= res, so
        // backing off past the residual keeps an exact hit on the right side
        const double h = std::max(4.0 * best_res, 4.0 * floor);
        out.index_from_top = n - 1 - sturm_count(T, best_rho - h);
        return out;
      }
    }
    prev_res = res;
  }
  throw ConvergenceError("eigenvector_inverse_iteration: residual did not reach tolerance");
}

}  // namespace

Eigenpair eigenvector_inverse_iteration(const SymTridiagonal& T, double lambda,
                                        std::uint64_t seed) {
  return inverse_iteration_core(T, lambda, seed, {});
}

std::vector<Eigenpair> eigenvectors_for_values(const SymTridiagonal& T,
                                               std::span<const double> values_desc,
                                               std::uint64_t seed) {
  std::vector<Eigenpair> out;
  out.reserve(values_desc.size());
  auto [glo, ghi] = gershgorin_interval(T);
  // values closer than this are treated as one cluster for reorthogonalization
  const double cluster = 1e-3 * std::max(ghi - glo, 1.0);
  for (std::size_t i = 0; i < values_desc.size(); ++i) {
    std::size_t first = i;
    while (first > 0 && std::fabs(values_desc[first - 1] - values_desc[i]) <= cluster) --first;
    std::span<const Eigenpair> neighbors(out.data() + first, i - first);
    Eigenpair p = inverse_iteration_core(T, values_desc[i], seed + 0x9e37 * (i + 1), neighbors);
    p.index_from_top = static_cast<int>(i);
    out.push_back(std::move(p));
  }
  return out;
}

namespace {

ResidualNorms residual_norms_of(std::vector<double>&& r) {
  ResidualNorms out;
  out.sup = detail::sup_norm(r);
  out.l2 = detail::nrm2(r);
  return out;
}

void check_residual_args(int opn, std::span<const double> v) {
  if (static_cast<int>(v.size()) != opn)
    throw DimensionError("residual: vector length does not match operator size");
  if (detail::sup_norm(v) == 0.0)
    throw DegenerateVectorError("residual: zero vector");
}

}  // namespace

ResidualNorms residual(const SymTridiagonal& op, double lambda, std::span<const double> v) {
  check_residual_args(op.n(), v);
  std::vector<double> r = apply(op, v);
  for (std::size_t i = 0; i < v.size(); ++i) r[i] -= lambda * v[i];
  return residual_norms_of(std::move(r));
}

ResidualNorms residual(const PeriodicOperator& op, double lambda, std::span<const double> v) {
  check_residual_args(op.n(), v);
  std::vector<double> r = apply(op, v);
  for (std::size_t i = 0; i < v.size(); ++i) r[i] -= lambda * v[i];
  return residual_norms_of(std::move(r));
}

}  // namespace mathieu
