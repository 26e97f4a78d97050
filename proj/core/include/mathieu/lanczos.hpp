#pragma once

#include <cstdint>

#include "mathieu/eigen_tridiag.hpp"
#include "mathieu/operators.hpp"

namespace mathieu {

enum class Extreme { top, bottom };

struct LanczosOptions {
  double tol = 1e-9;        // absolute residual tolerance for accepted Ritz pairs
  std::uint64_t seed = 0;   // start vectors are deterministic in the seed
  int max_basis = 0;        // 0 = automatic budget
  int max_restarts = 3;     // fresh orthogonal starts after Krylov breakdown
  bool want_vectors = true;
};

// k extreme eigenpairs of the periodic operator by Lanczos with full
// reorthogonalization.  On Krylov breakdown (invariant subspace found before
// k pairs converged) the iteration restarts with a fresh seeded vector
// orthogonal to everything so far; repeated eigenvalues are resolved across
// restart blocks.  Accepted pairs satisfy ||A y - theta y||_2 <= tol.
// Requires 1 <= k <= n/4; throws ConvergenceError if the basis budget or the
// restart budget runs out first.
Spectrum extreme_eigs_lanczos(const PeriodicOperator& op, int k, Extreme which,
                              const LanczosOptions& opts = {});

}  // namespace mathieu
