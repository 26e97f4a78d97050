#include "mathieu/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "detail.hpp"
#include "mathieu/errors.hpp"

namespace mathieu {

namespace {

struct LockedPair {
  double theta = 0.0;  // eigenvalue of the (possibly sign-flipped) operator
  std::vector<double> v;
  double residual = 0.0;
};

}  // namespace

Spectrum extreme_eigs_lanczos(const PeriodicOperator& op, int k, Extreme which,
                              const LanczosOptions& opts) {
  const int n = op.n();
  if (k < 1 || k > n / 4)
    throw ParameterError("extreme_eigs_lanczos: need 1 <= k <= n/4");
  if (!(opts.tol > 0.0)) throw ParameterError("extreme_eigs_lanczos: tol must be positive");

  const double sign = (which == Extreme::top) ? 1.0 : -1.0;
  const double tol = opts.tol;
  const double eps = std::numeric_limits<double>::epsilon();

  double amax = 0.0;
  for (int i = 0; i < n; ++i) {
    double s = std::fabs(op.tridiag.diag[i]);
    if (i > 0) s += std::fabs(op.tridiag.offdiag[i - 1]);
    if (i + 1 < n) s += std::fabs(op.tridiag.offdiag[i]);
    if (i == 0 || i == n - 1) s += std::fabs(op.corner);
    amax = std::max(amax, s);
  }
  const double scale = std::max(amax, 1.0);
  const double breakdown_tol = 100.0 * eps * scale;
  const double gap_tol = std::max(10.0 * tol, 1e-10 * scale);

  // B = sign * A; top eigenpairs of B are the requested extreme of A.
  auto matvec = [&](std::span<const double> v) {
    std::vector<double> w = apply(op, v);
    if (sign < 0.0) detail::scale(-1.0, w);
    return w;
  };

  std::vector<LockedPair> locked;
  auto locked_sort = [&] {
    std::stable_sort(locked.begin(), locked.end(),
                     [](const LockedPair& a, const LockedPair& b) { return a.theta > b.theta; });
  };

  // One deflated Krylov block in the orthogonal complement of the locked
  // vectors.  Returns the converged descending prefix of its top `want`
  // Ritz pairs (possibly empty).  The prefix rule matters: a lower Ritz
  // value may be exact yet still not be the next eigenvalue of the
  // complement when a higher one is a repeated eigenvalue, so anything
  // past the first unconverged pair is discarded and recomputed later.
  auto run_block = [&](int want, std::uint64_t salt) -> std::vector<LockedPair> {
    const int dim = n - static_cast<int>(locked.size());
    // the edge spacing of these operators scales like 1/n, so the Krylov
    // depth needed to split the top pairs grows like sqrt(n)
    const int by_size = static_cast<int>(9.0 * std::sqrt(static_cast<double>(n)));
    const int budget =
        opts.max_basis > 0 ? opts.max_basis : std::max({12 * k + 80, 200, by_size});
    const int jmax = std::min(budget, dim);

    detail::SplitMix64 rng(opts.seed ^ (0x9e3779b97f4a7c15ull * (salt + 1)));
    std::vector<std::vector<double>> Q;
    Q.reserve(static_cast<std::size_t>(jmax));
    std::vector<double> alpha, beta;

    std::vector<double> q0(static_cast<std::size_t>(n));
    for (int attempt = 0;; ++attempt) {
      rng.fill_symmetric(q0);
      for (int pass = 0; pass < 2; ++pass)
        for (const LockedPair& L : locked) detail::axpy(-detail::dot(L.v, q0), L.v, q0);
      const double nrm = detail::nrm2(q0);
      if (nrm > 1e-8) {
        detail::scale(1.0 / nrm, q0);
        break;
      }
      if (attempt >= 4)
        throw ConvergenceError("extreme_eigs_lanczos: could not seed a start vector");
    }
    Q.push_back(std::move(q0));

    for (int j = 0; j < jmax; ++j) {
      std::vector<double> w = matvec(Q[static_cast<std::size_t>(j)]);
      const double aj = detail::dot(Q[static_cast<std::size_t>(j)], w);
      alpha.push_back(aj);
      detail::axpy(-aj, Q[static_cast<std::size_t>(j)], w);
      if (j > 0) detail::axpy(-beta[static_cast<std::size_t>(j - 1)], Q[static_cast<std::size_t>(j - 1)], w);
      for (int pass = 0; pass < 2; ++pass) {
        for (const std::vector<double>& q : Q) detail::axpy(-detail::dot(q, w), q, w);
        for (const LockedPair& L : locked) detail::axpy(-detail::dot(L.v, w), L.v, w);
      }
      const double b = detail::nrm2(w);
      const bool breakdown = (b <= breakdown_tol);
      const bool last = (j + 1 == jmax);
      const int m = j + 1;

      if (breakdown || last || (m >= want && m % 3 == 0)) {
        SymTridiagonal Tb;
        Tb.diag = alpha;
        Tb.offdiag = beta;
        const int wtop = std::min(m, want);
        // The lock gate below is the true residual, so the inner solves must
        // sit well under tol: tight bisection, and the inverse-iteration
        // Rayleigh value (not the bisection midpoint) as the Ritz value.
        const double bis_tol = std::max(1e-3 * tol, 4.0 * eps * scale);
        const Spectrum ritz = eigenvalues_bisection(Tb, 0, wtop - 1, bis_tol);
        const std::vector<Eigenpair> svecs =
            eigenvectors_for_values(Tb, ritz.values, opts.seed ^ (salt * 0x2545f4914f6cdd1dull));

        std::vector<LockedPair> fresh;
        for (int i = 0; i < wtop; ++i) {
          const std::vector<double>& s = svecs[static_cast<std::size_t>(i)].vector;
          const double theta = svecs[static_cast<std::size_t>(i)].value;
          const double est = breakdown ? 0.0 : b * std::fabs(s[static_cast<std::size_t>(m - 1)]);
          if (est > 50.0 * tol) break;
          std::vector<double> y(static_cast<std::size_t>(n), 0.0);
          for (int l = 0; l < m; ++l)
            detail::axpy(s[static_cast<std::size_t>(l)], Q[static_cast<std::size_t>(l)], y);
          const double ynrm = detail::nrm2(y);
          if (ynrm < 0.5) break;  // basis lost orthogonality; do not lock from it
          detail::scale(1.0 / ynrm, y);
          std::vector<double> r = matvec(y);
          detail::axpy(-theta, y, r);
          const double res = detail::nrm2(r);
          if (res > tol) break;
          fresh.push_back({theta, std::move(y), res});
        }
        if (!fresh.empty() || breakdown || last) return fresh;
      }

      if (breakdown) return {};
      beta.push_back(b);
      detail::scale(1.0 / b, w);
      Q.push_back(std::move(w));
    }
    return {};
  };

  const int block_budget = 2 * k + 4 + std::max(0, opts.max_restarts);
  int blocks_used = 0;
  int no_progress = 0;
  std::uint64_t salt = 0;

  while (true) {
    if (static_cast<int>(locked.size()) >= k) {
      // The locked set is only the true top k if nothing larger remains in
      // the complement; a repeated extreme eigenvalue fails exactly this way.
      if (blocks_used++ >= block_budget)
        throw ConvergenceError("extreme_eigs_lanczos: restart budget exhausted");
      std::vector<LockedPair> probe = run_block(1, ++salt);
      if (probe.empty()) {
        if (++no_progress > opts.max_restarts)
          throw ConvergenceError("extreme_eigs_lanczos: verification block failed to converge");
        continue;
      }
      no_progress = 0;
      const double mu = probe.front().theta;
      const double locked_min = locked.back().theta;
      if (mu <= locked_min + gap_tol) break;
      std::erase_if(locked, [&](const LockedPair& L) { return L.theta < mu - gap_tol; });
      locked.push_back(std::move(probe.front()));
      locked_sort();
      continue;
    }

    if (blocks_used++ >= block_budget)
      throw ConvergenceError("extreme_eigs_lanczos: restart budget exhausted");
    std::vector<LockedPair> got = run_block(k - static_cast<int>(locked.size()), ++salt);
    if (got.empty()) {
      if (++no_progress > opts.max_restarts)
        throw ConvergenceError("extreme_eigs_lanczos: Krylov blocks stopped making progress");
      continue;
    }
    no_progress = 0;
    for (LockedPair& L : got) locked.push_back(std::move(L));
    locked_sort();
  }

  locked_sort();
  Spectrum out;
  out.method = SolveMethod::lanczos;
  out.values.resize(static_cast<std::size_t>(k));
  out.pairs.resize(static_cast<std::size_t>(k));
  for (int r = 0; r < k; ++r) {
    // locked is descending in theta = sign*lambda; descending in lambda means
    // reading it backwards when the bottom edge was requested.
    const LockedPair& L = locked[static_cast<std::size_t>(which == Extreme::top ? r : k - 1 - r)];
    out.values[static_cast<std::size_t>(r)] = sign * L.theta;
    Eigenpair& p = out.pairs[static_cast<std::size_t>(r)];
    p.value = sign * L.theta;
    p.residual_l2 = L.residual;
    p.index_from_top = (which == Extreme::top) ? r : n - k + r;
    if (opts.want_vectors) p.vector = L.v;
  }
  return out;
}

}  // namespace mathieu
