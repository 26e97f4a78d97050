#include "mathieu/edge.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "detail.hpp"
#include "mathieu/dense_jacobi.hpp"
#include "mathieu/lanczos.hpp"
#include "mathieu/transforms.hpp"

namespace mathieu {

double gamma_of(const OperatorParams& params) {
  if (!(params.alpha > 0.0)) throw ParameterError("gamma_of: alpha must be positive");
  if (!(params.beta > 0.0)) throw ParameterError("gamma_of: beta must be positive");
  return std::numbers::pi * params.alpha * std::sqrt(params.beta);
}

double approx_eigenvalue(int m, const OperatorParams& params, Edge edge) {
  if (m < 0) throw ParameterError("approx_eigenvalue: m must be >= 0");
  const double g = gamma_of(params);
  const double lam =
      2.0 * params.beta + 2.0 * std::exp(-g) - 4.0 * m * g * std::exp(-g);
  return edge == Edge::positive ? lam : -lam;
}

HermiteVector approx_eigenvector(int m, const OperatorParams& params, Edge edge) {
  const double g = gamma_of(params);
  const double s = params.theta / (2.0 * std::numbers::pi * params.alpha);
  if (edge == Edge::positive) return sample_periodic(m, g, params.n, s, false);
  return sample_periodic(m, g, params.n, s - 1.0 / (2.0 * params.alpha), true);
}

ApproxEigenpair approx_eigenpair(int m, const OperatorParams& params, Edge edge,
                                 double epsilon) {
  ApproxEigenpair p;
  p.m = m;
  p.edge = edge;
  p.lambda = approx_eigenvalue(m, params, edge);
  p.vector = approx_eigenvector(m, params, edge);
  p.regime_ok = sign_change_regime(m, gamma_of(params), params.n, epsilon).regime_ok;
  return p;
}

RegimeReport validate_regime(const OperatorParams& params, double epsilon, int m_max) {
  params.validate();
  if (!(epsilon > 0.0) || !(epsilon < 1.0))
    throw ParameterError("validate_regime: need 0 < epsilon < 1");
  if (m_max < 0) throw ParameterError("validate_regime: m_max must be >= 0");
  RegimeReport r;
  const double g = gamma_of(params);
  const double nd = static_cast<double>(params.n);
  r.gamma = g;
  r.epsilon = epsilon;
  r.m_max = m_max;
  r.main_lower = (4.0 / (nd * nd) <= g);
  r.main_upper = (g < 1.0);
  r.eps_lower = (4.0 / std::pow(nd, 2.0 - epsilon) < g);
  r.eps_upper = (g < std::pow(nd, -epsilon));
  r.sign_change_m_ok = (static_cast<double>(m_max) < std::pow(nd, epsilon) - 1.0);
  r.high_accuracy_m_max = 5;  // measured envelope of the gamma^2-accurate ranks
  r.extended_m_max = static_cast<int>(std::floor(std::sqrt(1.0 / g)));
  return r;
}

int count_below_with_persistence(std::span<const double> errors, double threshold,
                                 int window) {
  if (window < 1) throw ParameterError("count_below_with_persistence: window must be >= 1");
  int count = 0;
  int run = 0;
  for (double e : errors) {
    if (e <= threshold) {
      ++count;
      run = 0;
    } else if (++run >= window) {
      break;
    }
  }
  return count;
}

ComparisonReport compare_edge(const OperatorParams& params, int m_top, OperatorKind kind,
                              const CompareOptions& opts) {
  params.validate();
  const int n = params.n;
  if (m_top < 1 || m_top > n / 4)
    throw ParameterError("compare_edge: need 1 <= m_top <= n/4");
  const double g = gamma_of(params);

  SolveMethod method = opts.method;
  // lanczos is the struct default; for the open-boundary operator the
  // kind-appropriate default is bisection, so resolve rather than reject.
  if (method == SolveMethod::lanczos && kind == OperatorKind::finite)
    method = SolveMethod::sturm_bisection;
  if (method == SolveMethod::sturm_bisection && kind == OperatorKind::periodic)
    throw ParameterError(
        "compare_edge: the cyclic operator is not tridiagonal; use lanczos or dense_jacobi");

  SymTridiagonal T;
  PeriodicOperator P;
  if (kind == OperatorKind::finite)
    T = build_finite(params);
  else
    P = build_periodic(params);

  std::vector<double> values;
  std::vector<Eigenpair> pairs;
  switch (method) {
    case SolveMethod::sturm_bisection: {
      const Spectrum s = eigenvalues_bisection(T, 0, m_top - 1, opts.tol);
      values = s.values;
      if (opts.want_vectors) pairs = eigenvectors_for_values(T, values, opts.seed);
      break;
    }
    case SolveMethod::lanczos: {
      LanczosOptions lo;
      lo.tol = opts.tol > 0.0 ? opts.tol : 1e-9;
      lo.seed = opts.seed;
      lo.want_vectors = opts.want_vectors;
      Spectrum s = extreme_eigs_lanczos(P, m_top, Extreme::top, lo);
      values = std::move(s.values);
      pairs = std::move(s.pairs);
      break;
    }
    case SolveMethod::dense_jacobi: {
      Spectrum s = kind == OperatorKind::finite
                       ? dense_eig_small(to_dense(T), opts.want_vectors)
                       : dense_eig_small(to_dense(P), opts.want_vectors);
      values.assign(s.values.begin(), s.values.begin() + m_top);
      if (opts.want_vectors)
        pairs.assign(std::make_move_iterator(s.pairs.begin()),
                     std::make_move_iterator(s.pairs.begin() + m_top));
      break;
    }
  }

  ComparisonReport rep;
  rep.params = params;
  rep.kind = kind;
  rep.gamma = g;
  rep.method = method;
  rep.rows.resize(static_cast<std::size_t>(m_top));
  std::vector<double> errs(static_cast<std::size_t>(m_top));

  for (int m = 0; m < m_top; ++m) {
    ComparisonRow& row = rep.rows[static_cast<std::size_t>(m)];
    row.m = m;
    row.true_value = values[static_cast<std::size_t>(m)];
    row.approx_value = approx_eigenvalue(m, params, Edge::positive);
    row.abs_err = std::fabs(row.true_value - row.approx_value);
    errs[static_cast<std::size_t>(m)] = row.abs_err;

    HermiteVector hv = approx_eigenvector(m, params, Edge::positive);
    std::vector<double> av = std::move(hv.samples);
    detail::scale(1.0 / detail::sup_norm(av), av);  // residuals per unit sup norm
    const ResidualNorms rn = kind == OperatorKind::finite
                                 ? residual(T, row.approx_value, av)
                                 : residual(P, row.approx_value, av);
    row.residual_sup = rn.sup;
    row.residual_l2 = rn.l2;
    row.sign_changes_approx = sign_changes(av, default_zero_tol(av));
    if (static_cast<std::size_t>(m) < pairs.size() &&
        !pairs[static_cast<std::size_t>(m)].vector.empty()) {
      const Eigenpair& pair = pairs[static_cast<std::size_t>(m)];
      const std::vector<double>& tv = pair.vector;
      // An iterative eigenvector carries noise of order residual/gap spread
      // over the exponential tails; entries below that level are not data.
      double gap = std::numeric_limits<double>::infinity();
      if (m > 0) gap = std::min(gap, std::fabs(values[static_cast<std::size_t>(m - 1)] - row.true_value));
      if (m + 1 < static_cast<int>(values.size()))
        gap = std::min(gap, std::fabs(values[static_cast<std::size_t>(m + 1)] - row.true_value));
      double tol_true = default_zero_tol(tv);
      if (std::isfinite(gap) && gap > 0.0)
        tol_true = std::max(tol_true, 2.0 * (pair.residual_l2 / gap) * detail::nrm2(tv));
      row.sign_changes_true = sign_changes(tv, tol_true);
    }
  }
  rep.count_within_gamma = count_below_with_persistence(errs, g);
  rep.count_within_gamma_sq = count_below_with_persistence(errs, g * g);
  return rep;
}

std::vector<SweepRow> sweep_accuracy_counts(std::span<const int> n_list,
                                            const std::function<OperatorParams(int)>& make_params,
                                            const SweepOptions& opts) {
  if (!make_params) throw ParameterError("sweep_accuracy_counts: missing params factory");
  std::vector<std::future<SweepRow>> futs;
  futs.reserve(n_list.size());
  for (int n : n_list) {
    futs.push_back(std::async(std::launch::async, [n, make_params, opts] {
      const OperatorParams p = make_params(n);
      const double g = gamma_of(p);
      int m_top = opts.m_top;
      if (m_top <= 0) {
        // generous enough for the gamma-accuracy count to saturate before the cut
        m_top = static_cast<int>(std::ceil(2.2 * std::sqrt(1.0 / g))) + 8;
      }
      m_top = std::max(1, std::min(m_top, p.n / 4));
      CompareOptions co;
      co.method = SolveMethod::lanczos;
      co.tol = opts.tol;
      co.seed = opts.seed;
      co.want_vectors = false;
      const ComparisonReport rep = compare_edge(p, m_top, OperatorKind::periodic, co);
      SweepRow row;
      row.n = p.n;
      row.gamma = g;
      row.count_within_gamma = rep.count_within_gamma;
      row.count_within_gamma_sq = rep.count_within_gamma_sq;
      row.sqrt_inv_gamma = std::sqrt(1.0 / g);
      return row;
    }));
  }
  std::vector<SweepRow> rows;
  rows.reserve(futs.size());
  for (std::future<SweepRow>& f : futs) rows.push_back(f.get());
  return rows;
}

MultiplicityReport multiplicity_check(const OperatorParams& params, double tol) {
  params.validate();
  if (!(tol > 0.0)) throw ParameterError("multiplicity_check: tol must be positive");
  const int n = params.n;
  if (n > 512) throw ParameterError("multiplicity_check: dense oracle limited to n <= 512");

  long long r = 0;
  if (params.has_rational_alpha()) {
    if (params.alpha_num <= 0)
      throw ParameterError("multiplicity_check: alpha must be positive");
    if (n % params.alpha_den != 0)
      throw NotRepresentableError("multiplicity_check: alpha is not r/n for this window");
    r = params.alpha_num * (n / params.alpha_den);
  } else {
    const double rn = params.alpha * n;
    const double rounded = std::round(rn);
    if (!(params.alpha > 0.0) || rounded < 1.0 || std::fabs(rn - rounded) > 1e-9)
      throw NotRepresentableError("multiplicity_check: alpha is not r/n for this window");
    r = static_cast<long long>(rounded);
  }
  if (n % r != 0) throw NotRepresentableError("multiplicity_check: r must divide n");

  MultiplicityReport rep;
  rep.r = r;
  rep.expected_multiplicity = n / r;
  if (r == 1) {
    // translation by n/r is the full cycle, so the bound degenerates
    rep.skipped = true;
    return rep;
  }

  const PeriodicOperator P = build_periodic(params);
  const Spectrum s = dense_eig_small(to_dense(P), false);
  double acc = s.values[0];
  int size = 1;
  for (int i = 1; i < n; ++i) {
    if (s.values[static_cast<std::size_t>(i - 1)] - s.values[static_cast<std::size_t>(i)] <= tol) {
      acc += s.values[static_cast<std::size_t>(i)];
      ++size;
    } else {
      rep.clusters.push_back({acc / size, size});
      acc = s.values[static_cast<std::size_t>(i)];
      size = 1;
    }
  }
  rep.clusters.push_back({acc / size, size});
  rep.min_cluster_size = n;
  for (const EigenCluster& c : rep.clusters)
    rep.min_cluster_size = std::min(rep.min_cluster_size, c.size);
  rep.clusters_ok = rep.min_cluster_size >= rep.expected_multiplicity;

  std::vector<double> v = approx_eigenvector(0, params, Edge::positive).samples;
  detail::scale(1.0 / detail::nrm2(v), v);
  const long step = static_cast<long>(n / r);
  double rho0 = 0.0;
  for (long k = 0; k < r; ++k) {
    const std::vector<double> w = translate_cyclic(v, k * step);
    const std::vector<double> pw = mathieu::apply(P, w);
    const double rho = detail::dot(w, pw) / detail::dot(w, w);
    if (k == 0)
      rho0 = rho;
    else
      rep.max_rayleigh_spread = std::max(rep.max_rayleigh_spread, std::fabs(rho - rho0));
  }
  return rep;
}

ResidualNorms infinite_residual(int m, const OperatorParams& params, double window_half_width,
                                Edge edge) {
  if (m < 0) throw ParameterError("infinite_residual: m must be >= 0");
  const double g = gamma_of(params);
  const double needed = std::sqrt((m + 1.0) / g) + 10.0 / std::sqrt(g);
  if (!(window_half_width >= needed))
    throw WindowError("infinite_residual: window half-width must be at least " +
                      std::to_string(needed));

  const int K = static_cast<int>(std::ceil(window_half_width));
  const double two_pi_alpha = 2.0 * std::numbers::pi * params.alpha;
  const double lambda = approx_eigenvalue(m, params, edge);

  // The window lattice is placed so the Hermite arguments are the integers
  // -K..K; the analytic shift then cancels out of the potential argument
  // identically and the result cannot depend on theta.
  WindowedVector v;
  v.values.resize(static_cast<std::size_t>(2 * K + 1));
  if (edge == Edge::positive) {
    const double s = params.theta / two_pi_alpha;
    v.x_lo = -static_cast<double>(K) - s;
    for (int j = -K; j <= K; ++j)
      v.values[static_cast<std::size_t>(j + K)] = hermite_eval(m, g, j);
  } else {
    const double u = (std::numbers::pi - params.theta) / two_pi_alpha;
    v.x_lo = -static_cast<double>(K) + u;
    for (int j = -K; j <= K; ++j) {
      double val = hermite_eval(m, g, j);
      if (j % 2 != 0) val = -val;  // the half-frequency modulation, real at these sites
      v.values[static_cast<std::size_t>(j + K)] = val;
    }
  }
  const double peak = detail::sup_norm(v.values);
  if (peak == 0.0) throw DegenerateVectorError("infinite_residual: samples underflowed");
  detail::scale(1.0 / peak, v.values);

  const WindowedVector hv = apply_infinite(params, v);
  ResidualNorms rn;
  double sq = 0.0;
  for (int j = 0; j < hv.size(); ++j) {
    const double rr = hv.values[static_cast<std::size_t>(j)] -
                      lambda * v.values[static_cast<std::size_t>(j + 1)];
    rn.sup = std::max(rn.sup, std::fabs(rr));
    sq += rr * rr;
  }
  rn.l2 = std::sqrt(sq);
  return rn;
}

}  // namespace mathieu
