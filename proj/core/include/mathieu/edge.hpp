#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mathieu/eigen_tridiag.hpp"
#include "mathieu/hermite.hpp"
#include "mathieu/operators.hpp"

namespace mathieu {

// Small parameter gamma = pi alpha sqrt(beta); requires alpha > 0, beta > 0.
double gamma_of(const OperatorParams& params);

enum class Edge { positive, negative };
enum class OperatorKind { finite, periodic };

// Closed-form approximate eigenvalue of rank m at the chosen spectral edge:
//
//   positive:  lambda_m =   2 beta + 2 exp(-gamma) - 4 m gamma exp(-gamma)
//   negative:  lambda_m = -(2 beta + 2 exp(-gamma) - 4 m gamma exp(-gamma))
//
// Consecutive ranks are spaced by exactly 4 gamma exp(-gamma).
double approx_eigenvalue(int m, const OperatorParams& params, Edge edge);

// Matching approximate eigenvector: the sampled Hermite function, with the
// analytic argument shifted by theta/(2 pi alpha) at the positive edge and by
// theta/(2 pi alpha) - 1/(2 alpha) with a (-1)^x factor at the negative edge.
HermiteVector approx_eigenvector(int m, const OperatorParams& params, Edge edge);

struct ApproxEigenpair {
  int m = 0;
  Edge edge = Edge::positive;
  double lambda = 0.0;
  HermiteVector vector;
  bool regime_ok = true;  // advisory; construction never fails on regime violations
};

ApproxEigenpair approx_eigenpair(int m, const OperatorParams& params, Edge edge,
                                 double epsilon = 0.5);

// Hypothesis checks for the asymptotic regime, plus recommended m ranges.
struct RegimeReport {
  double gamma = 0.0;
  double epsilon = 0.0;
  int m_max = 0;
  bool main_lower = false;      // 4/n^2 <= gamma
  bool main_upper = false;      // gamma < 1
  bool eps_lower = false;       // 4/n^(2-eps) < gamma
  bool eps_upper = false;       // gamma < n^(-eps)
  bool sign_change_m_ok = false;  // m_max < n^eps - 1
  int high_accuracy_m_max = 0;  // measured O(1) envelope for gamma^2 accuracy
  int extended_m_max = 0;       // floor(sqrt(1/gamma)): gamma-accuracy range

  bool all_pass() const {
    return main_lower && main_upper && eps_lower && eps_upper && sign_change_m_ok;
  }
};

// Requires 0 < epsilon < 1 and m_max >= 0.
RegimeReport validate_regime(const OperatorParams& params, double epsilon, int m_max);

// Leading count of entries <= threshold, scanning from index 0 and stopping
// only once `window` consecutive entries exceed the threshold; isolated
// exceedances are skipped, not counted.  This is the stopping rule used for
// the accuracy-count columns.
int count_below_with_persistence(std::span<const double> errors, double threshold,
                                 int window = 3);

struct CompareOptions {
  SolveMethod method = SolveMethod::lanczos;  // must suit the operator kind
  double tol = 0.0;                           // 0 = solver default
  std::uint64_t seed = 0;
  bool want_vectors = true;  // sign-change columns need true eigenvectors
};

struct ComparisonRow {
  int m = 0;
  double true_value = 0.0;
  double approx_value = 0.0;
  double abs_err = 0.0;
  double residual_sup = 0.0;  // residual of the approximate pair under the operator
  double residual_l2 = 0.0;
  int sign_changes_true = -1;  // -1 = not computed
  int sign_changes_approx = -1;
};

struct ComparisonReport {
  OperatorParams params;
  OperatorKind kind = OperatorKind::periodic;
  double gamma = 0.0;
  SolveMethod method = SolveMethod::lanczos;
  std::vector<ComparisonRow> rows;
  int count_within_gamma = 0;
  int count_within_gamma_sq = 0;
};

// True top-m_top eigenpairs versus the closed-form approximations at the
// positive edge, with residuals and sign-change counts per rank.  The finite
// operator is solved by bisection + inverse iteration, the periodic one by
// Lanczos; dense Jacobi may be forced for either (n <= 1024).
// Requires 1 <= m_top <= n/4.
ComparisonReport compare_edge(const OperatorParams& params, int m_top, OperatorKind kind,
                              const CompareOptions& opts = {});

struct SweepRow {
  int n = 0;
  double gamma = 0.0;
  int count_within_gamma = 0;
  int count_within_gamma_sq = 0;
  double sqrt_inv_gamma = 0.0;
};

struct SweepOptions {
  double tol = 0.0;
  std::uint64_t seed = 0;
  int m_top = 0;  // 0 = automatic: enough ranks to see the gamma-count saturate
};

// Accuracy counts across a list of window sizes (periodic operator).  The
// per-n solves run concurrently; rows come back in input order and the result
// is deterministic for a fixed seed.
std::vector<SweepRow> sweep_accuracy_counts(std::span<const int> n_list,
                                            const std::function<OperatorParams(int)>& make_params,
                                            const SweepOptions& opts = {});

struct EigenCluster {
  double value = 0.0;  // cluster mean
  int size = 0;
};

// For alpha = r/n the periodic operator commutes with translation by n/r, so
// eigenvalue clusters have size at least n/r.  Checked against the dense
// oracle (n <= 512).  r = 1 makes the statement vacuous: skipped = true.
struct MultiplicityReport {
  long long r = 0;
  long long expected_multiplicity = 0;
  bool skipped = false;
  std::vector<EigenCluster> clusters;
  int min_cluster_size = 0;
  double max_rayleigh_spread = 0.0;  // over cyclic translates of an approximate eigenvector
  bool clusters_ok = false;
};

MultiplicityReport multiplicity_check(const OperatorParams& params, double tol = 1e-8);

// Sup/l2 residual of the analytically shifted phi_m against the doubly
// infinite operator on a window of half-width W about the Hermite bump, with
// lambda_m as the reference value.  The window grid is placed so the Hermite
// arguments are exact integers; the theta shift then cancels out of the
// potential exactly and the residual is theta-invariant by construction.
// Requires W >= sqrt((m+1)/gamma) + 10/sqrt(gamma).
ResidualNorms infinite_residual(int m, const OperatorParams& params, double window_half_width,
                                Edge edge = Edge::positive);

}  // namespace mathieu
