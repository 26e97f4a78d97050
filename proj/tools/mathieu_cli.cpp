#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cliutil.hpp"
#include "mathieu/dense_jacobi.hpp"
#include "mathieu/edge.hpp"
#include "mathieu/eigen_tridiag.hpp"
#include "mathieu/errors.hpp"
#include "mathieu/hermite.hpp"
#include "mathieu/lanczos.hpp"
#include "mathieu/operators.hpp"
#include "mathieu/version.hpp"

namespace {

struct Cfg {
  int n = 0;
  std::string alpha_raw = "0";
  double beta = 1.0;
  double theta = 0.0;
  std::string op = "finite";
  std::string method = "auto";
  int top = 0;
  double tol = 0.0;
  std::uint64_t seed = 0;
  double epsilon = 0.5;
  int m_max = 5;
  std::string sweep_raw;
  std::string csv_path;
  std::string svg_path;
  int m = 0;
  double gamma = 0.0;
  double shift = 0.0;
  bool modulated = false;
  bool vectors = false;
  double window = 0.0;
};

std::string bool_word(bool b) { return b ? "true" : "false"; }

std::string config_comment(const Cfg& c, const std::string& sub) {
  std::ostringstream o;
  o << "config: " << sub << " n=" << c.n << " alpha=" << c.alpha_raw << " beta="
    << cliutil::g17(c.beta) << " theta=" << cliutil::g17(c.theta) << " operator=" << c.op
    << " method=" << c.method << " top=" << c.top << " tol=" << cliutil::g17(c.tol)
    << " seed=" << c.seed;
  if (sub == "sweep") o << " sweep=" << c.sweep_raw;
  if (sub == "hermite")
    o << " m=" << c.m << " gamma=" << cliutil::g17(c.gamma) << " shift="
      << cliutil::g17(c.shift) << " modulated=" << bool_word(c.modulated);
  if (sub == "validate") o << " epsilon=" << cliutil::g17(c.epsilon) << " m_max=" << c.m_max;
  if (sub == "spectrum" && c.op == "infinite") o << " window=" << cliutil::g17(c.window);
  return o.str();
}

void emit_table(const Cfg& c, cliutil::Table& t) {
  if (c.csv_path.empty()) {
    cliutil::write_csv(std::cout, t);
  } else {
    cliutil::write_csv_file(c.csv_path, t);
    std::cerr << "csv: " << c.csv_path << "\n";
  }
}

void emit_plot(const Cfg& c, const cliutil::Table& t, const std::string& title,
               const std::string& xlab, const std::string& ylab,
               const std::vector<cliutil::Series>& series) {
  if (c.svg_path.empty()) return;
  cliutil::write_svg_file(c.svg_path, title, xlab, ylab, series);
  const std::string dat = cliutil::dat_path_for(c.svg_path);
  cliutil::write_dat_file(dat, t);
  std::cerr << "svg: " << c.svg_path << "\n";
  std::cerr << "dat: " << dat << "\n";
}

mathieu::SolveMethod map_method(const std::string& name, const std::string& op, bool have_top) {
  using mathieu::SolveMethod;
  if (name == "bisection") {
    if (op == "periodic")
      throw mathieu::ParameterError("bisection serves the finite operator; use lanczos or dense");
    return SolveMethod::sturm_bisection;
  }
  if (name == "lanczos") {
    if (op == "finite")
      throw mathieu::ParameterError("lanczos serves the periodic operator; use bisection or dense");
    return SolveMethod::lanczos;
  }
  if (name == "dense") return SolveMethod::dense_jacobi;
  // auto
  if (op == "finite") return SolveMethod::sturm_bisection;
  return have_top ? SolveMethod::lanczos : SolveMethod::dense_jacobi;
}

int run_spectrum(const Cfg& c) {
  const mathieu::OperatorParams params =
      cliutil::resolve_params(cliutil::parse_alpha(c.alpha_raw), c.beta, c.theta, c.n);

  cliutil::Table t;
  t.comments = {config_comment(c, "spectrum"), std::string("version: ") + mathieu::kVersion};

  if (c.op == "infinite") {
    const int top = c.top > 0 ? c.top : 6;
    const double g = mathieu::gamma_of(params);
    const double needed = std::sqrt(static_cast<double>(top) / g) + 10.0 / std::sqrt(g);
    const double window = c.window > 0.0 ? c.window : needed;
    t.columns = {"rank", "value", "residual_l2"};
    for (int m = 0; m < top; ++m) {
      const double lam = mathieu::approx_eigenvalue(m, params, mathieu::Edge::positive);
      const mathieu::ResidualNorms rn =
          mathieu::infinite_residual(m, params, window, mathieu::Edge::positive);
      t.rows.push_back({std::to_string(m), cliutil::g17(lam), cliutil::g17(rn.l2)});
    }
  } else {
    const mathieu::SolveMethod method = map_method(c.method, c.op, c.top > 0);
    std::vector<double> values;
    std::vector<mathieu::Eigenpair> pairs;
    bool have_residuals = false;

    if (method == mathieu::SolveMethod::dense_jacobi) {
      const mathieu::DenseSym M = c.op == "periodic"
                                      ? mathieu::to_dense(mathieu::build_periodic(params))
                                      : mathieu::to_dense(mathieu::build_finite(params));
      mathieu::Spectrum s = mathieu::dense_eig_small(M, c.vectors);
      const int top = c.top > 0 ? std::min(c.top, c.n) : c.n;
      values.assign(s.values.begin(), s.values.begin() + top);
      if (c.vectors) {
        pairs.assign(s.pairs.begin(), s.pairs.begin() + top);
        have_residuals = true;
      }
    } else if (method == mathieu::SolveMethod::sturm_bisection) {
      const mathieu::SymTridiagonal T = mathieu::build_finite(params);
      const int top = c.top > 0 ? std::min(c.top, c.n) : c.n;
      mathieu::Spectrum s = mathieu::eigenvalues_bisection(T, 0, top - 1, c.tol);
      values = s.values;
      if (c.vectors) {
        pairs = mathieu::eigenvectors_for_values(T, values, c.seed);
        have_residuals = true;
      }
    } else {
      if (c.top <= 0)
        throw mathieu::ParameterError(
            "periodic lanczos needs --top (or use --method dense for the full spectrum)");
      const mathieu::PeriodicOperator P = mathieu::build_periodic(params);
      mathieu::LanczosOptions lo;
      lo.tol = c.tol > 0.0 ? c.tol : 1e-9;
      lo.seed = c.seed;
      mathieu::Spectrum s =
          mathieu::extreme_eigs_lanczos(P, c.top, mathieu::Extreme::top, lo);
      values = s.values;
      pairs = std::move(s.pairs);
      have_residuals = true;
    }

    t.columns = have_residuals ? std::vector<std::string>{"rank", "value", "residual_l2"}
                               : std::vector<std::string>{"rank", "value"};
    for (std::size_t i = 0; i < values.size(); ++i) {
      std::vector<std::string> row = {std::to_string(i), cliutil::g17(values[i])};
      if (have_residuals) row.push_back(cliutil::g17(pairs[i].residual_l2));
      t.rows.push_back(std::move(row));
    }
  }

  emit_table(c, t);
  cliutil::Series s{"value", {}};
  for (std::size_t i = 0; i < t.rows.size(); ++i)
    s.points.emplace_back(static_cast<double>(i), std::stod(t.rows[i][1]));
  emit_plot(c, t, "spectrum (" + c.op + ", n=" + std::to_string(c.n) + ")", "rank", "value",
            {s});
  return 0;
}

int run_compare(const Cfg& c) {
  if (c.op == "infinite")
    throw mathieu::ParameterError("compare handles the finite and periodic operators");
  const mathieu::OperatorParams params =
      cliutil::resolve_params(cliutil::parse_alpha(c.alpha_raw), c.beta, c.theta, c.n);
  const mathieu::OperatorKind kind =
      c.op == "periodic" ? mathieu::OperatorKind::periodic : mathieu::OperatorKind::finite;

  const double g = mathieu::gamma_of(params);
  int top = c.top;
  if (top <= 0) {
    const int extended = static_cast<int>(std::floor(std::sqrt(1.0 / g)));
    top = std::min(c.n / 4, std::max(10, extended + 5));
  }

  mathieu::CompareOptions opts;
  opts.method = map_method(c.method, c.op, true);
  opts.tol = c.tol;
  opts.seed = c.seed;
  opts.want_vectors = true;
  const mathieu::ComparisonReport rep = mathieu::compare_edge(params, top, kind, opts);

  cliutil::Table t;
  t.comments = {config_comment(c, "compare"), std::string("version: ") + mathieu::kVersion,
                "gamma: " + cliutil::g17(rep.gamma),
                "count_within_gamma: " + std::to_string(rep.count_within_gamma),
                "count_within_gamma_sq: " + std::to_string(rep.count_within_gamma_sq)};
  t.columns = {"m",            "true_value",  "approx_value",      "abs_err",
               "residual_sup", "residual_l2", "sign_changes_true", "sign_changes_approx"};
  for (const mathieu::ComparisonRow& r : rep.rows)
    t.rows.push_back({std::to_string(r.m), cliutil::g17(r.true_value),
                      cliutil::g17(r.approx_value), cliutil::g17(r.abs_err),
                      cliutil::g17(r.residual_sup), cliutil::g17(r.residual_l2),
                      std::to_string(r.sign_changes_true),
                      std::to_string(r.sign_changes_approx)});
  emit_table(c, t);

  cliutil::Series st{"true", {}}, sa{"approx", {}};
  for (const mathieu::ComparisonRow& r : rep.rows) {
    st.points.emplace_back(r.m, r.true_value);
    sa.points.emplace_back(r.m, r.approx_value);
  }
  emit_plot(c, t, "edge eigenvalues vs rank (n=" + std::to_string(c.n) + ")", "m", "eigenvalue",
            {st, sa});
  return 0;
}

int run_sweep(const Cfg& c) {
  std::vector<int> ns;
  std::stringstream ss(c.sweep_raw);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      ns.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw mathieu::ParameterError("bad --sweep entry: '" + tok + "'");
    }
  }
  if (ns.size() < 2) throw mathieu::ParameterError("--sweep needs at least two window sizes");

  const cliutil::AlphaSpec alpha = cliutil::parse_alpha(c.alpha_raw);
  const double beta = c.beta, theta = c.theta;
  mathieu::SweepOptions opts;
  opts.tol = c.tol;
  opts.seed = c.seed;
  opts.m_top = c.top;
  const std::vector<mathieu::SweepRow> rows = mathieu::sweep_accuracy_counts(
      ns, [alpha, beta, theta](int n) { return cliutil::resolve_params(alpha, beta, theta, n); },
      opts);

  cliutil::Table t;
  t.comments = {config_comment(c, "sweep"), std::string("version: ") + mathieu::kVersion};
  t.columns = {"n", "gamma", "count_within_gamma", "count_within_gamma_sq", "sqrt_inv_gamma"};
  for (const mathieu::SweepRow& r : rows)
    t.rows.push_back({std::to_string(r.n), cliutil::g17(r.gamma),
                      std::to_string(r.count_within_gamma),
                      std::to_string(r.count_within_gamma_sq),
                      cliutil::g17(r.sqrt_inv_gamma)});
  emit_table(c, t);

  cliutil::Series c1{"count_within_gamma", {}}, c2{"count_within_gamma_sq", {}},
      c3{"sqrt_inv_gamma", {}};
  for (const mathieu::SweepRow& r : rows) {
    c1.points.emplace_back(r.n, r.count_within_gamma);
    c2.points.emplace_back(r.n, r.count_within_gamma_sq);
    c3.points.emplace_back(r.n, r.sqrt_inv_gamma);
  }
  emit_plot(c, t, "accuracy counts vs window size", "n", "count", {c1, c2, c3});
  return 0;
}

int run_hermite(const Cfg& c) {
  double g = c.gamma;
  if (!(g > 0.0)) {
    const mathieu::OperatorParams params =
        cliutil::resolve_params(cliutil::parse_alpha(c.alpha_raw), c.beta, c.theta, c.n);
    g = mathieu::gamma_of(params);  // needs a positive alpha when --gamma is absent
  }
  const mathieu::HermiteVector hv = mathieu::sample_periodic(c.m, g, c.n, c.shift, c.modulated);

  Cfg cc = c;
  cc.gamma = g;
  cliutil::Table t;
  t.comments = {config_comment(cc, "hermite"), std::string("version: ") + mathieu::kVersion};
  t.columns = {"x", "value"};
  for (int j = 0; j < hv.n; ++j)
    t.rows.push_back(
        {cliutil::g17(-c.n / 2.0 + j), cliutil::g17(hv.samples[static_cast<std::size_t>(j)])});
  emit_table(c, t);

  const mathieu::HermiteCoefficients coeff = mathieu::hermite_coefficients(c.m);
  std::ostringstream co;
  for (std::size_t i = 0; i < coeff.values.size(); ++i)
    co << (i ? "," : "") << cliutil::g17(coeff.values[i]);
  std::cerr << "coefficients: " << co.str() << "\n";
  std::cerr << "sign_changes: "
            << mathieu::sign_changes(hv.samples, mathieu::default_zero_tol(hv.samples)) << "\n";

  cliutil::Series s{"phi_m", {}};
  for (int j = 0; j < hv.n; ++j)
    s.points.emplace_back(-c.n / 2.0 + j, hv.samples[static_cast<std::size_t>(j)]);
  emit_plot(c, t, "sampled Hermite function (m=" + std::to_string(c.m) + ")", "x", "value",
            {s});
  return 0;
}

int run_validate(const Cfg& c) {
  const mathieu::OperatorParams params =
      cliutil::resolve_params(cliutil::parse_alpha(c.alpha_raw), c.beta, c.theta, c.n);
  const mathieu::RegimeReport r = mathieu::validate_regime(params, c.epsilon, c.m_max);

  const bool color = cliutil::color_allowed();
  const auto verdict = [color](bool ok) {
    if (!color) return std::string(ok ? "PASS" : "FAIL");
    return std::string(ok ? "\033[32mPASS\033[0m" : "\033[31mFAIL\033[0m");
  };
  const double nd = static_cast<double>(params.n);

  std::cout << "gamma=" << cliutil::g17(r.gamma) << "\n";
  std::cout << "epsilon=" << cliutil::g17(r.epsilon) << "\n";
  std::cout << "m_max=" << r.m_max << "\n";
  std::cout << "main_lower=" << verdict(r.main_lower) << "  (4/n^2 = "
            << cliutil::g6(4.0 / (nd * nd)) << " <= gamma)\n";
  std::cout << "main_upper=" << verdict(r.main_upper) << "  (gamma < 1)\n";
  std::cout << "eps_lower=" << verdict(r.eps_lower) << "  (4/n^(2-eps) = "
            << cliutil::g6(4.0 / std::pow(nd, 2.0 - r.epsilon)) << " < gamma)\n";
  std::cout << "eps_upper=" << verdict(r.eps_upper) << "  (gamma < n^-eps = "
            << cliutil::g6(std::pow(nd, -r.epsilon)) << ")\n";
  std::cout << "sign_change_m_ok=" << verdict(r.sign_change_m_ok) << "  (m_max < n^eps - 1 = "
            << cliutil::g6(std::pow(nd, r.epsilon) - 1.0) << ")\n";
  std::cout << "high_accuracy_m_max=" << r.high_accuracy_m_max << "\n";
  std::cout << "extended_m_max=" << r.extended_m_max << "\n";
  std::cout << "all=" << verdict(r.all_pass()) << "\n";
  return r.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  Cfg cfg;
  CLI::App app{"spectral toolkit for the discrete cosine-potential operator"};
  app.require_subcommand(1);

  const auto add_common = [&cfg](CLI::App* sub, bool need_n) {
    auto* n = sub->add_option("--n", cfg.n, "window size (even, >= 4)");
    if (need_n) n->required();
    sub->add_option("--alpha", cfg.alpha_raw, "frequency: 'p/q' exact, 'p/n' family, or decimal");
    sub->add_option("--beta", cfg.beta, "coupling (> 0)");
    sub->add_option("--theta", cfg.theta, "phase offset");
    sub->add_option("--tol", cfg.tol, "solver tolerance (0 = default)");
    sub->add_option("--seed", cfg.seed, "rng seed for start vectors");
    sub->add_option("--csv", cfg.csv_path, "write the table here instead of stdout");
    sub->add_option("--svg", cfg.svg_path, "write a plot here (plus a gnuplot .dat)");
  };

  CLI::App* sp = app.add_subcommand("spectrum", "true or approximate eigenvalues");
  add_common(sp, true);
  sp->add_option("--operator", cfg.op, "finite | periodic | infinite")
      ->check(CLI::IsMember({"finite", "periodic", "infinite"}));
  sp->add_option("--method", cfg.method, "auto | bisection | lanczos | dense")
      ->check(CLI::IsMember({"auto", "bisection", "lanczos", "dense"}));
  sp->add_option("--top", cfg.top, "how many eigenvalues from the top (0 = all)");
  sp->add_option("--window", cfg.window, "half-width for the infinite-operator residual");
  sp->add_flag("--vectors", cfg.vectors, "also compute eigenvectors (adds residual_l2)");

  CLI::App* cp = app.add_subcommand("compare", "true vs closed-form edge eigenpairs");
  add_common(cp, true);
  cp->add_option("--operator", cfg.op, "finite | periodic")
      ->check(CLI::IsMember({"finite", "periodic"}));
  cp->add_option("--method", cfg.method, "auto | bisection | lanczos | dense")
      ->check(CLI::IsMember({"auto", "bisection", "lanczos", "dense"}));
  cp->add_option("--top", cfg.top, "ranks to compare (0 = auto)");

  CLI::App* sw = app.add_subcommand("sweep", "accuracy counts across window sizes");
  add_common(sw, false);
  sw->add_option("--sweep", cfg.sweep_raw, "comma-separated window sizes")->required();
  sw->add_option("--top", cfg.top, "ranks per window (0 = auto)");

  CLI::App* hm = app.add_subcommand("hermite", "sampled scaled Hermite function");
  add_common(hm, true);
  hm->add_option("--m", cfg.m, "function order");
  hm->add_option("--gamma", cfg.gamma, "scale parameter (overrides alpha/beta)");
  hm->add_option("--shift", cfg.shift, "analytic argument shift");
  hm->add_flag("--modulated", cfg.modulated, "apply the (-1)^x factor");

  CLI::App* vd = app.add_subcommand("validate", "asymptotic-regime hypothesis report");
  add_common(vd, true);
  vd->add_option("--epsilon", cfg.epsilon, "regime exponent, 0 < eps < 1");
  vd->add_option("--m-max", cfg.m_max, "largest rank the run intends to use");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sp->parsed()) return run_spectrum(cfg);
    if (cp->parsed()) {
      if (cfg.op == "finite" && cp->count("--operator") == 0) cfg.op = "periodic";
      return run_compare(cfg);
    }
    if (sw->parsed()) return run_sweep(cfg);
    if (hm->parsed()) return run_hermite(cfg);
    if (vd->parsed()) return run_validate(cfg);
  } catch (const mathieu::ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const mathieu::WindowError& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const mathieu::NotRepresentableError& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const mathieu::DimensionError& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const mathieu::Error& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
