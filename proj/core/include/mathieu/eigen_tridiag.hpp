#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "mathieu/operators.hpp"

namespace mathieu {

struct Eigenpair {
  double value = 0.0;
  std::vector<double> vector;
  int index_from_top = -1;  // 0 = algebraically largest; -1 = unknown
  double residual_l2 = 0.0;
};

enum class SolveMethod { sturm_bisection, lanczos, dense_jacobi };

// Eigenvalues sorted descending; pairs (when computed) follow the same order.
struct Spectrum {
  std::vector<double> values;
  std::vector<Eigenpair> pairs;
  SolveMethod method = SolveMethod::sturm_bisection;
};

// Number of eigenvalues of T strictly below x, via the Sturm sequence of
// leading-principal-minor pivots.  Near-zero pivots are clamped away from 0
// at ulp scale so the count survives exact hits.  All off-diagonal entries
// must be nonzero (throws SplitMatrixError otherwise); O(n) per call.
int sturm_count(const SymTridiagonal& T, double x);

// Gershgorin enclosure [lo, hi] of the spectrum.
std::pair<double, double> gershgorin_interval(const SymTridiagonal& T);

// Eigenvalues by rank from the top (0 = largest), each bracketed by Sturm
// counts and bisected to within tol.  tol <= 0 selects the default
// 1e-10 * (Gershgorin diameter).  Multiple eigenvalues come out once per rank.
Spectrum eigenvalues_bisection(const SymTridiagonal& T, int rank_lo, int rank_hi,
                               double tol = 0.0);

// One eigenvector by shifted inverse iteration with partial pivoting, from a
// deterministic seeded start.  Returns a unit vector v with
// ||T v - rho v||_2 <= 1e-8 ||T||_inf where rho is the Rayleigh quotient.
Eigenpair eigenvector_inverse_iteration(const SymTridiagonal& T, double lambda,
                                        std::uint64_t seed = 0);

// Batch variant for a descending list of eigenvalues.  Vectors belonging to a
// cluster of nearby values are reorthogonalized against the ones already
// computed, so the batch comes out orthogonal even across tight clusters.
std::vector<Eigenpair> eigenvectors_for_values(const SymTridiagonal& T,
                                               std::span<const double> values_desc,
                                               std::uint64_t seed = 0);

struct ResidualNorms {
  double sup = 0.0;
  double l2 = 0.0;
};

// Norms of op*v - lambda*v.  No normalization of v is performed (the sup norm
// is meaningful for pointwise bounds on unnormalized vectors).  v must be
// nonzero and of matching dimension.
ResidualNorms residual(const SymTridiagonal& op, double lambda, std::span<const double> v);
ResidualNorms residual(const PeriodicOperator& op, double lambda, std::span<const double> v);

}  // namespace mathieu
