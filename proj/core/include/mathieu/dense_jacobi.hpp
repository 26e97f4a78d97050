#pragma once

#include "mathieu/eigen_tridiag.hpp"
#include "mathieu/operators.hpp"

namespace mathieu {

// Small dense symmetric matrix, full row-major storage.
struct DenseSym {
  int n = 0;
  std::vector<double> a;

  static DenseSym zero(int n);
  double& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  double at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

DenseSym to_dense(const SymTridiagonal& T);
DenseSym to_dense(const PeriodicOperator& P);

// Full eigendecomposition by cyclic Jacobi rotations.  Deterministic (no
// randomness), quadratically convergent; sweeps stop once the off-diagonal
// Frobenius norm falls below 1e-12 * ||M||_F.  Intended as the slow trust
// anchor for cross-checking the iterative solvers; n is capped at 1024.
Spectrum dense_eig_small(const DenseSym& M, bool want_vectors = true);

}  // namespace mathieu
