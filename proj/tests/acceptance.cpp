// End-to-end acceptance gate.  Each criterion prints exactly one line:
//
//   [PASS] <k> <name> <metric> (<elapsed>s < <budget>s)
//
// and the binary exits nonzero if any criterion fails its tolerance or its
// time budget.  argv[1] is the CLI binary path (used by the reproducibility
// criterion).

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "mathieu/dense_jacobi.hpp"
#include "mathieu/edge.hpp"
#include "mathieu/eigen_tridiag.hpp"
#include "mathieu/hermite.hpp"
#include "mathieu/lanczos.hpp"
#include "mathieu/operators.hpp"
#include "mathieu/transforms.hpp"

using namespace mathieu;

namespace {

constexpr double kPi = std::numbers::pi;

std::string g_cli;
int g_failures = 0;
int g_index = 0;

struct Outcome {
  bool pass = false;
  std::string metric;
};

void run_criterion(const std::string& name, double budget_s,
                   const std::function<Outcome()>& body) {
  ++g_index;
  const auto t0 = std::chrono::steady_clock::now();
  Outcome oc;
  try {
    oc = body();
  } catch (const std::exception& e) {
    oc.pass = false;
    oc.metric = std::string("exception: ") + e.what();
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = elapsed <= budget_s;
  const bool pass = oc.pass && in_time;
  if (!pass) ++g_failures;
  std::printf("[%s] %2d %s %s(%.2fs %s %.0fs)\n", pass ? "PASS" : "FAIL", g_index, name.c_str(),
              oc.metric.empty() ? "" : (oc.metric + " ").c_str(), elapsed,
              in_time ? "<" : ">", budget_s);
  std::fflush(stdout);
}

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

OperatorParams over_n(int n) { return make_params_rational(1, n, 1.0, 0.0, n); }

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double sup_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double e : v) m = std::max(m, std::fabs(e));
  return m;
}

// --- 1: bisection reproduces the closed-form chain spectrum ----------------

Outcome chain_bisection() {
  SymTridiagonal T;
  T.diag.assign(100, 0.0);
  T.offdiag.assign(99, 1.0);
  const Spectrum s = eigenvalues_bisection(T, 0, 99, 1e-12);
  double worst = 0.0;
  for (int r = 0; r < 100; ++r) {
    const double want = 2.0 * std::cos((r + 1) * kPi / 101.0);
    worst = std::max(worst, std::fabs(s.values[static_cast<std::size_t>(r)] - want));
  }
  return {worst <= 1e-10, "err=" + fmt("%.2e", worst)};
}

// --- 2: lanczos agrees with the dense oracle on the ring -------------------

Outcome lanczos_vs_dense() {
  const OperatorParams p = over_n(200);
  const PeriodicOperator P = build_periodic(p);
  LanczosOptions lo;
  lo.seed = 1;
  const Spectrum lz = extreme_eigs_lanczos(P, 20, Extreme::top, lo);
  const Spectrum dn = dense_eig_small(to_dense(P), false);
  double worst = 0.0;
  for (int r = 0; r < 20; ++r)
    worst = std::max(worst, std::fabs(lz.values[static_cast<std::size_t>(r)] -
                                      dn.values[static_cast<std::size_t>(r)]));
  return {worst <= 1e-8, "err=" + fmt("%.2e", worst)};
}

// --- 3: closed-form eigenvalues are gamma^2 accurate on both kinds ---------

Outcome edge_formula_accuracy() {
  const OperatorParams p = over_n(2000);
  const double g = gamma_of(p);
  const double bound = 10.0 * g * g;
  CompareOptions fin;
  fin.method = SolveMethod::sturm_bisection;
  fin.want_vectors = false;
  CompareOptions per;
  per.want_vectors = false;
  double worst = 0.0;
  for (const ComparisonRow& row : compare_edge(p, 6, OperatorKind::finite, fin).rows)
    worst = std::max(worst, row.abs_err);
  for (const ComparisonRow& row : compare_edge(p, 6, OperatorKind::periodic, per).rows)
    worst = std::max(worst, row.abs_err);
  return {worst <= bound, "err=" + fmt("%.2e", worst) + " bound=" + fmt("%.2e", bound)};
}

// --- 4: the residual of the approximate ground pair scales like gamma^2 ----

Outcome residual_order() {
  std::vector<double> lx, ly;
  for (int n : {500, 1000, 2000, 4000}) {
    const OperatorParams p = over_n(n);
    const PeriodicOperator P = build_periodic(p);
    std::vector<double> v = approx_eigenvector(0, p, Edge::positive).samples;
    const double peak = sup_norm(v);
    for (double& e : v) e /= peak;
    const double res = residual(P, approx_eigenvalue(0, p, Edge::positive), v).sup;
    lx.push_back(std::log(gamma_of(p)));
    ly.push_back(std::log(res));
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(lx.size());
  my /= static_cast<double>(ly.size());
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    num += (lx[i] - mx) * (ly[i] - my);
    den += (lx[i] - mx) * (lx[i] - mx);
  }
  const double slope = num / den;
  return {std::fabs(slope - 2.0) <= 0.3, "slope=" + fmt("%.3f", slope)};
}

// --- 5: gamma-accuracy counts scale like sqrt(1/gamma) ---------------------

Outcome count_scaling() {
  const std::vector<int> sizes = {1000, 2000, 4000};
  const std::vector<SweepRow> rows =
      sweep_accuracy_counts(sizes, [](int n) { return over_n(n); }, {});
  int sq_min = 1 << 20, sq_max = 0;
  double ratio_lo = 1e300, ratio_hi = 0.0;
  for (const SweepRow& row : rows) {
    const double ratio = row.count_within_gamma / row.sqrt_inv_gamma;
    ratio_lo = std::min(ratio_lo, ratio);
    ratio_hi = std::max(ratio_hi, ratio);
    sq_min = std::min(sq_min, row.count_within_gamma_sq);
    sq_max = std::max(sq_max, row.count_within_gamma_sq);
  }
  const bool ok = ratio_lo >= 0.5 && ratio_hi <= 2.0 && sq_max <= 10 && (sq_max - sq_min) <= 1;
  return {ok, "ratio=[" + fmt("%.2f", ratio_lo) + "," + fmt("%.2f", ratio_hi) +
                  "] sq=[" + std::to_string(sq_min) + "," + std::to_string(sq_max) + "]"};
}

// --- 6: rank m eigenvectors cross zero exactly m times ---------------------

Outcome sign_structure() {
  const OperatorParams p = make_params(0.05 / kPi, 1.0, 0.0, 64);
  const SymTridiagonal T = build_finite(p);
  const Spectrum s = dense_eig_small(to_dense(T), true);
  for (int m = 0; m <= 8; ++m) {
    const std::vector<double>& tv = s.pairs[static_cast<std::size_t>(m)].vector;
    if (sign_changes(tv, default_zero_tol(tv)) != m)
      return {false, "true vector at m=" + std::to_string(m)};
    const std::vector<double> av = approx_eigenvector(m, p, Edge::positive).samples;
    if (sign_changes(av, default_zero_tol(av)) != m)
      return {false, "approx vector at m=" + std::to_string(m)};
  }
  return {true, "m=0..8"};
}

// --- 7: the spectrum is symmetric and the reflection map realizes it -------

Outcome spectral_symmetry() {
  const OperatorParams p = over_n(256);
  const PeriodicOperator P = build_periodic(p);
  const Spectrum s = dense_eig_small(to_dense(P), true);
  double worst = 0.0;
  for (int k = 0; k < 256; ++k)
    worst = std::max(worst, std::fabs(s.values[static_cast<std::size_t>(k)] +
                                      s.values[static_cast<std::size_t>(255 - k)]));
  const std::vector<double> w = negative_edge_map(s.pairs[0].vector, p);
  const std::vector<double> pw = mathieu::apply(P, w);
  const double rayleigh = dot(w, pw) / dot(w, w);
  const double refl = std::fabs(rayleigh + s.values[0]);
  return {worst <= 1e-8 && refl <= 1e-8,
          "sym=" + fmt("%.2e", worst) + " refl=" + fmt("%.2e", refl)};
}

// --- 8: translation and modulation obey the commutation phase --------------

Outcome weyl_phase() {
  const int n = 64;
  std::uint64_t state = 0x2545f4914f6cdd1dull;
  const auto next = [&state]() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  };
  const auto uniform = [&next]() {
    return 2.0 * static_cast<double>(next() >> 11) * 0x1.0p-53 - 1.0;
  };
  // b*n must stay integer: off-ring frequencies break the relation under
  // the cyclic wrap, which only the doubly infinite operator avoids
  const long as[] = {0, 1, 5, n / 2};
  const double bs[] = {0.0, 0.5, 0.25, 3.0 / static_cast<double>(n)};
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::complex<double>> v(n);
    for (auto& z : v) z = {uniform(), uniform()};
    for (long a : as)
      for (double b : bs) {
        const std::vector<std::complex<double>> lhs = translate_modulate(v, a, b);
        std::vector<std::complex<double>> rhs =
            modulate(translate_cyclic(std::span<const std::complex<double>>(v), a), b);
        const std::complex<double> phase =
            std::polar(1.0, -2.0 * kPi * static_cast<double>(a) * b);
        for (std::size_t j = 0; j < rhs.size(); ++j)
          worst = std::max(worst, std::abs(lhs[j] - phase * rhs[j]));
      }
  }
  return {worst <= 1e-12, "err=" + fmt("%.2e", worst)};
}

// --- 9: the coefficient recurrence equals the factorial closed form --------

Outcome coefficient_recurrence() {
  // closed form per parity, then an exact integer replay of the recurrence
  double worst = 0.0;
  for (int m = 0; m <= 12; ++m) {
    const HermiteCoefficients hc = hermite_coefficients(m);
    const int terms = static_cast<int>(hc.values.size());
    for (int l = 0; l < terms; ++l) {
      double want;
      if (m % 2 == 0) {
        const int top = m / 2 - l;
        double fact = 1.0;
        for (int i = 2; i <= m; ++i) fact *= i;
        double f2l = 1.0;
        for (int i = 2; i <= 2 * l; ++i) f2l *= i;
        double ftop = 1.0;
        for (int i = 2; i <= top; ++i) ftop *= i;
        want = ((top % 2 == 0) ? 1.0 : -1.0) * fact * std::pow(8.0, l) / (f2l * ftop);
      } else {
        const int top = (m - 1) / 2 - l;
        double fact = 1.0;
        for (int i = 2; i <= m; ++i) fact *= i;
        double f2l = 1.0;
        for (int i = 2; i <= 2 * l + 1; ++i) f2l *= i;
        double ftop = 1.0;
        for (int i = 2; i <= top; ++i) ftop *= i;
        want = 2.0 * std::sqrt(2.0) * ((top % 2 == 0) ? 1.0 : -1.0) * fact *
               std::pow(8.0, l) / (f2l * ftop);
      }
      const double got = hc.values[static_cast<std::size_t>(l)];
      worst = std::max(worst, std::fabs(got - want) / std::max(1.0, std::fabs(want)));
    }
  }
  if (worst > 1e-12) return {false, "rel=" + fmt("%.2e", worst)};

  for (int m = 0; m <= 8; m += 2) {
    const HermiteCoefficients hc = hermite_coefficients(m);
    long long cur = 1;
    for (int i = m / 2 + 1; i <= m; ++i) cur *= i;  // m! / (m/2)!
    if ((m / 2) % 2 != 0) cur = -cur;
    for (int l = 0; l <= m / 2; ++l) {
      if (static_cast<double>(cur) != hc.values[static_cast<std::size_t>(l)])
        return {false, "integer mismatch at m=" + std::to_string(m)};
      if (l < m / 2) {
        const long long li = l + 1;
        cur = cur * 4 * (2 * li - 2 - m) / (2 * li * (2 * li - 1));
      }
    }
  }
  return {true, "rel=" + fmt("%.2e", worst)};
}

// --- 10: the shifted bump nearly annihilates the infinite operator ---------

Outcome infinite_window() {
  const double g = 0.01;
  const OperatorParams p0 = make_params(g / kPi, 1.0, 0.0, 1000);
  const OperatorParams p1 = make_params(g / kPi, 1.0, kPi / 3.0, 1000);
  const ResidualNorms r0 = infinite_residual(0, p0, 200.0);
  const ResidualNorms r1 = infinite_residual(0, p1, 200.0);
  const double drift = std::max(std::fabs(r0.sup - r1.sup), std::fabs(r0.l2 - r1.l2));
  const bool ok = r0.sup <= 10.0 * g * g && r1.sup <= 10.0 * g * g && drift <= 1e-10;
  return {ok, "sup=" + fmt("%.2e", r0.sup) + " drift=" + fmt("%.2e", drift)};
}

// --- 11: gamma-level accuracy reaches m ~ sqrt(1/gamma) --------------------

Outcome extended_range() {
  const OperatorParams p = over_n(4000);
  const double g = gamma_of(p);
  CompareOptions opts;
  opts.method = SolveMethod::sturm_bisection;
  opts.want_vectors = false;
  const ComparisonReport rep = compare_edge(p, 36, OperatorKind::finite, opts);
  double c = 0.0;
  for (const ComparisonRow& row : rep.rows) c = std::max(c, row.abs_err / g);
  return {c <= 5.0, "C=" + fmt("%.2f", c)};
}

// --- 12: seeded CLI runs write byte-identical tables ------------------------

Outcome reproducibility() {
  if (g_cli.empty()) return {false, "no cli path given"};
  const auto slurp = [](const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
  };
  char tmpl[] = "/tmp/mathieu_accept_XXXXXX";
  if (!mkdtemp(tmpl)) return {false, "no temp dir"};
  const std::string dir = tmpl;
  int checked = 0;
  for (const std::string args :
       {std::string("compare --n 200 --alpha 1/200 --top 6 --seed 11"),
        std::string("sweep --sweep 100,200 --alpha 1/n --seed 3")}) {
    const std::string a = dir + "/a" + std::to_string(checked) + ".csv";
    const std::string b = dir + "/b" + std::to_string(checked) + ".csv";
    if (std::system((g_cli + " " + args + " --csv " + a + " >/dev/null 2>&1").c_str()) != 0)
      return {false, "cli run failed"};
    if (std::system((g_cli + " " + args + " --csv " + b + " >/dev/null 2>&1").c_str()) != 0)
      return {false, "cli rerun failed"};
    const std::string ba = slurp(a), bb = slurp(b);
    if (ba.empty() || ba != bb) return {false, "bytes differ for: " + args};
    ++checked;
  }
  return {true, std::to_string(checked) + " tables"};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_cli = argv[1];

  run_criterion("chain-spectrum-bisection", 1.0, chain_bisection);
  run_criterion("lanczos-matches-dense-top20", 5.0, lanczos_vs_dense);
  run_criterion("edge-formula-within-10gamma2", 60.0, edge_formula_accuracy);
  run_criterion("residual-order-gamma-squared", 120.0, residual_order);
  run_criterion("count-scaling-sqrt-inv-gamma", 180.0, count_scaling);
  run_criterion("sign-changes-match-rank", 5.0, sign_structure);
  run_criterion("spectrum-symmetry-reflection", 30.0, spectral_symmetry);
  run_criterion("weyl-commutation-phase", 1.0, weyl_phase);
  run_criterion("hermite-recurrence-vs-factorial", 1.0, coefficient_recurrence);
  run_criterion("infinite-window-residual", 2.0, infinite_window);
  run_criterion("gamma-accuracy-extended-range", 120.0, extended_range);
  run_criterion("csv-byte-reproducibility", 30.0, reproducibility);

  if (g_failures > 0) {
    std::printf("acceptance: %d of 12 criteria failed\n", g_failures);
    return 1;
  }
  std::printf("acceptance: 12/12 criteria passed\n");
  return 0;
}
