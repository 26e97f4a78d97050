#include "mathieu/hermite.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace mathieu {

HermiteCoefficients hermite_coefficients(int m) {
  if (m < 0) throw ParameterError("hermite_coefficients: m must be >= 0");
  HermiteCoefficients c;
  c.m = m;
  const bool odd = (m % 2) != 0;
  const int terms = odd ? (m - 1) / 2 + 1 : m / 2 + 1;
  c.values.resize(terms);

  // l = 0 seed: the factorial formula collapses to m!/(floor(m/2))! up to sign
  // (and a 2 sqrt(2) factor for odd m).
  const int half = odd ? (m - 1) / 2 : m / 2;
  double seed = 1.0;
  for (int i = half + 1; i <= m; ++i) seed *= static_cast<double>(i);
  if (half % 2 != 0) seed = -seed;
  if (odd) seed *= 2.0 * std::numbers::sqrt2;
  c.values[0] = seed;

  for (int l = 1; l < terms; ++l) {
    // multiply first, divide once: integer-valued coefficients stay exact
    const double num = odd ? 4.0 * (2.0 * l - 1.0 - m) : 4.0 * (2.0 * l - 2.0 - m);
    const double den = odd ? 2.0 * l * (2.0 * l + 1.0) : 2.0 * l * (2.0 * l - 1.0);
    c.values[l] = (c.values[l - 1] * num) / den;
  }
  return c;
}

double hermite_eval(int m, double gamma, double x) {
  if (m < 0) throw ParameterError("hermite_eval: m must be >= 0");
  if (!(gamma > 0.0)) throw ParameterError("hermite_eval: gamma must be positive");
  const double weight = std::exp(-gamma * x * x);
  if (weight == 0.0) return 0.0;  // beyond the representable tail for supported m
  const double y = std::sqrt(2.0 * gamma) * x;
  // physicists' Hermite polynomial H_m(y) by the three-term recurrence
  double hk = 1.0;
  double hk1 = 0.0;  // H_{k-1}
  for (int k = 0; k < m; ++k) {
    const double next = 2.0 * y * hk - 2.0 * k * hk1;
    hk1 = hk;
    hk = next;
  }
  return weight * hk;
}

HermiteVector sample_periodic(int m, double gamma, int n, double shift, bool modulated) {
  if (n < 2 || n % 2 != 0)
    throw ParameterError("sample_periodic: n must be even and >= 2, got " + std::to_string(n));
  if (m >= n) throw ParameterError("sample_periodic: requires m < n");
  HermiteVector h;
  h.m = m;
  h.gamma = gamma;
  h.n = n;
  h.shift = shift;
  h.modulated = modulated;
  h.samples.resize(n);
  double peak = 0.0;
  for (int j = 0; j < n; ++j) {
    const long long x = -static_cast<long long>(n) / 2 + j;
    double val = hermite_eval(m, gamma, static_cast<double>(x) + shift);
    if (modulated && (x % 2 != 0)) val = -val;
    h.samples[j] = val;
    peak = std::max(peak, std::fabs(val));
  }
  if (peak == 0.0)
    throw DegenerateVectorError("sample_periodic: all samples underflowed to zero");
  return h;
}

int sign_changes(std::span<const double> v, double zero_tol) {
  if (zero_tol < 0.0) throw ParameterError("sign_changes: zero_tol must be >= 0");
  int count = 0;
  int prev = 0;  // 0 = no retained entry yet
  for (double e : v) {
    if (std::fabs(e) <= zero_tol) continue;
    const int s = e > 0.0 ? 1 : -1;
    if (prev != 0 && s != prev) ++count;
    prev = s;
  }
  if (prev == 0)
    throw DegenerateVectorError("sign_changes: no entry above the zero threshold");
  return count;
}

double default_zero_tol(std::span<const double> v) {
  double peak = 0.0;
  for (double e : v) peak = std::max(peak, std::fabs(e));
  return 1e-12 * peak;
}

SignChangeRegime sign_change_regime(int m, double gamma, int n, double epsilon) {
  if (m < 0 || n < 2 || !(gamma > 0.0) || !(epsilon > 0.0) || !(epsilon < 1.0))
    throw ParameterError("sign_change_regime: need m >= 0, n >= 2, gamma > 0, 0 < epsilon < 1");
  SignChangeRegime r;
  r.roots_interval_radius = std::sqrt((m + 1.0) / gamma);
  r.min_zero_spacing = std::numbers::pi / std::sqrt(2.0 * gamma * (2.0 * m + 1.0));
  const double nd = static_cast<double>(n);
  const double lower = 4.0 / std::pow(nd, 2.0 - epsilon);
  const double upper = std::pow(nd, -epsilon);
  // upper comparison is inclusive so that gamma sitting exactly on the
  // boundary (e.g. gamma = 1/sqrt(n) with epsilon = 1/2) counts as inside
  r.regime_ok = (lower <= gamma) && (gamma <= upper) &&
                (static_cast<double>(m) < std::pow(nd, epsilon) - 1.0);
  return r;
}

}  // namespace mathieu
