#include "mathieu/dense_jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "detail.hpp"

namespace mathieu {

DenseSym DenseSym::zero(int n) {
  DenseSym m;
  m.n = n;
  m.a.assign(static_cast<std::size_t>(n) * n, 0.0);
  return m;
}

DenseSym to_dense(const SymTridiagonal& T) {
  const int n = T.n();
  DenseSym m = DenseSym::zero(n);
  for (int i = 0; i < n; ++i) {
    m.at(i, i) = T.diag[i];
    if (i + 1 < n) {
      m.at(i, i + 1) = T.offdiag[i];
      m.at(i + 1, i) = T.offdiag[i];
    }
  }
  return m;
}

DenseSym to_dense(const PeriodicOperator& P) {
  DenseSym m = to_dense(P.tridiag);
  const int n = P.n();
  m.at(0, n - 1) += P.corner;
  m.at(n - 1, 0) += P.corner;
  return m;
}

namespace {

double off_frobenius(const DenseSym& A) {
  double s = 0.0;
  for (int p = 0; p < A.n; ++p)
    for (int q = p + 1; q < A.n; ++q) s += A.at(p, q) * A.at(p, q);
  return std::sqrt(2.0 * s);
}

double frobenius(const DenseSym& A) {
  double s = 0.0;
  for (double x : A.a) s += x * x;
  return std::sqrt(s);
}

}  // namespace

Spectrum dense_eig_small(const DenseSym& M, bool want_vectors) {
  const int n = M.n;
  if (n < 1) throw DimensionError("dense_eig_small: empty matrix");
  if (n > 1024) throw ParameterError("dense_eig_small: oracle size exceeded (n <= 1024)");
  if (static_cast<int>(M.a.size()) != n * n)
    throw DimensionError("dense_eig_small: storage does not match n");

  DenseSym A = M;
  std::vector<double> V(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) V[static_cast<std::size_t>(i) * n + i] = 1.0;

  const double target = 1e-12 * frobenius(M);
  for (int sweep = 0; sweep < 40; ++sweep) {
    if (off_frobenius(A) <= target) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = A.at(p, q);
        if (apq == 0.0) continue;
        const double tau = (A.at(q, q) - A.at(p, p)) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // A <- J^T A J with the (p,q) rotation
        const double app = A.at(p, p), aqq = A.at(q, q);
        A.at(p, p) = app - t * apq;
        A.at(q, q) = aqq + t * apq;
        A.at(p, q) = 0.0;
        A.at(q, p) = 0.0;
        for (int i = 0; i < n; ++i) {
          if (i == p || i == q) continue;
          const double aip = A.at(i, p), aiq = A.at(i, q);
          A.at(i, p) = c * aip - s * aiq;
          A.at(p, i) = A.at(i, p);
          A.at(i, q) = s * aip + c * aiq;
          A.at(q, i) = A.at(i, q);
        }
        for (int i = 0; i < n; ++i) {
          double* vi = V.data() + static_cast<std::size_t>(i) * n;
          const double vip = vi[p], viq = vi[q];
          vi[p] = c * vip - s * viq;
          vi[q] = s * vip + c * viq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return A.at(i, i) > A.at(j, j); });

  Spectrum out;
  out.method = SolveMethod::dense_jacobi;
  out.values.resize(n);
  for (int r = 0; r < n; ++r) out.values[r] = A.at(order[r], order[r]);
  if (want_vectors) {
    out.pairs.resize(n);
    std::vector<double> mv(n);
    for (int r = 0; r < n; ++r) {
      Eigenpair& p = out.pairs[r];
      p.value = out.values[r];
      p.index_from_top = r;
      p.vector.resize(n);
      const int col = order[r];
      for (int i = 0; i < n; ++i) p.vector[i] = V[static_cast<std::size_t>(i) * n + col];
      for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        const double* row = M.a.data() + static_cast<std::size_t>(i) * n;
        for (int j = 0; j < n; ++j) acc += row[j] * p.vector[j];
        mv[i] = acc - p.value * p.vector[i];
      }
      p.residual_l2 = detail::nrm2(mv);
    }
  }
  return out;
}

}  // namespace mathieu
