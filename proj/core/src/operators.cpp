#include "mathieu/operators.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace mathieu {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Cosine argument at integer site k for exact rational alpha = p/q:
// 2 pi alpha k is reduced mod 2 pi through (p k) mod q before any rounding.
double rational_argument(long long p, long long q, long long k, double theta) {
  __int128 pk = static_cast<__int128>(p) * k;
  long long r = static_cast<long long>(pk % q);
  if (r < 0) r += q;
  return kTwoPi * (static_cast<double>(r) / static_cast<double>(q)) + theta;
}

double site_potential(const OperatorParams& params, long long k) {
  if (params.has_rational_alpha()) {
    return 2.0 * params.beta *
           std::cos(rational_argument(params.alpha_num, params.alpha_den, k, params.theta));
  }
  return 2.0 * params.beta *
         std::cos(kTwoPi * params.alpha * static_cast<double>(k) + params.theta);
}

}  // namespace

void OperatorParams::validate() const {
  if (n < 4 || n % 2 != 0)
    throw ParameterError("window size n must be even and >= 4, got " + std::to_string(n));
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw ParameterError("beta must be positive and finite");
  if (!std::isfinite(alpha) || alpha < -0.5 || alpha >= 0.5)
    throw ParameterError("alpha must lie in [-1/2, 1/2)");
  if (!std::isfinite(theta)) throw ParameterError("theta must be finite");
  if (alpha_den < 0) throw ParameterError("rational alpha denominator must be positive");
}

OperatorParams make_params(double alpha, double beta, double theta, int n) {
  OperatorParams p;
  p.alpha = alpha;
  p.beta = beta;
  p.theta = theta;
  p.n = n;
  p.validate();
  return p;
}

OperatorParams make_params_rational(long long p, long long q, double beta, double theta, int n) {
  if (q <= 0) throw ParameterError("rational alpha requires a positive denominator");
  long long g = std::gcd(p < 0 ? -p : p, q);
  if (g > 1) {
    p /= g;
    q /= g;
  }
  OperatorParams out;
  out.alpha = static_cast<double>(p) / static_cast<double>(q);
  out.beta = beta;
  out.theta = theta;
  out.n = n;
  out.alpha_num = p;
  out.alpha_den = q;
  out.validate();
  return out;
}

double potential(const OperatorParams& params, double x) {
  return 2.0 * params.beta * std::cos(kTwoPi * params.alpha * x + params.theta);
}

SymTridiagonal build_finite(const OperatorParams& params) {
  params.validate();
  SymTridiagonal T;
  T.diag.resize(params.n);
  T.offdiag.assign(params.n - 1, 1.0);
  const long long half = params.n / 2;
  for (int j = 0; j < params.n; ++j) T.diag[j] = site_potential(params, -half + j);
  return T;
}

PeriodicOperator build_periodic(const OperatorParams& params) {
  PeriodicOperator P;
  P.tridiag = build_finite(params);
  P.corner = 1.0;
  return P;
}

namespace {

template <class S>
std::vector<S> apply_tridiag(const SymTridiagonal& op, std::span<const S> v) {
  const int n = op.n();
  if (static_cast<int>(v.size()) != n)
    throw DimensionError("apply: vector length does not match operator size");
  std::vector<S> y(n);
  for (int i = 0; i < n; ++i) {
    S acc = v[i] * op.diag[i];
    if (i > 0) acc += v[i - 1] * op.offdiag[i - 1];
    if (i + 1 < n) acc += v[i + 1] * op.offdiag[i];
    y[i] = acc;
  }
  return y;
}

template <class S>
std::vector<S> apply_periodic(const PeriodicOperator& op, std::span<const S> v) {
  std::vector<S> y = apply_tridiag(op.tridiag, v);
  const int n = op.n();
  y[0] += v[n - 1] * op.corner;
  y[n - 1] += v[0] * op.corner;
  return y;
}

}  // namespace

std::vector<double> apply(const SymTridiagonal& op, std::span<const double> v) {
  return apply_tridiag(op, v);
}

std::vector<double> apply(const PeriodicOperator& op, std::span<const double> v) {
  return apply_periodic(op, v);
}

std::vector<std::complex<double>> apply(const SymTridiagonal& op,
                                        std::span<const std::complex<double>> v) {
  return apply_tridiag(op, v);
}

std::vector<std::complex<double>> apply(const PeriodicOperator& op,
                                        std::span<const std::complex<double>> v) {
  return apply_periodic(op, v);
}

WindowedVector apply_infinite(const OperatorParams& params, const WindowedVector& v) {
  if (!(params.beta > 0.0)) throw ParameterError("beta must be positive");
  if (v.size() < 3) throw WindowError("apply_infinite needs a window of at least 3 sites");
  WindowedVector out;
  out.x_lo = v.x_lo + 1.0;
  out.values.resize(v.size() - 2);
  for (int j = 1; j + 1 < v.size(); ++j) {
    const double x = v.site(j);
    out.values[j - 1] = v.values[j - 1] + v.values[j + 1] + potential(params, x) * v.values[j];
  }
  return out;
}

}  // namespace mathieu
