#include "mathieu/transforms.hpp"

#include <cmath>
#include <numbers>

#include "mathieu/errors.hpp"

namespace mathieu {

namespace {

inline std::size_t wrap(long j, long n) { return static_cast<std::size_t>(((j % n) + n) % n); }

template <class Scalar>
std::vector<Scalar> translate_impl(std::span<const Scalar> v, long a) {
  const long n = static_cast<long>(v.size());
  if (n == 0) throw DimensionError("translate_cyclic: empty vector");
  std::vector<Scalar> out(v.size());
  for (long j = 0; j < n; ++j) out[static_cast<std::size_t>(j)] = v[wrap(j - a, n)];
  return out;
}

}  // namespace

std::vector<double> translate_cyclic(std::span<const double> v, long a) {
  return translate_impl(v, a);
}

std::vector<std::complex<double>> translate_cyclic(std::span<const std::complex<double>> v,
                                                   long a) {
  return translate_impl(v, a);
}

std::vector<std::complex<double>> modulate(std::span<const std::complex<double>> v, double b) {
  const long n = static_cast<long>(v.size());
  if (n == 0) throw DimensionError("modulate: empty vector");
  std::vector<std::complex<double>> out(v.size());
  for (long j = 0; j < n; ++j) {
    const double x = static_cast<double>(-n / 2 + j);
    const double phase = 2.0 * std::numbers::pi * b * x;
    out[static_cast<std::size_t>(j)] =
        std::complex<double>(std::cos(phase), std::sin(phase)) * v[static_cast<std::size_t>(j)];
  }
  return out;
}

std::vector<std::complex<double>> translate_modulate(std::span<const std::complex<double>> v,
                                                     long a, double b) {
  const std::vector<std::complex<double>> m = modulate(v, b);
  return translate_cyclic(std::span<const std::complex<double>>(m), a);
}

std::vector<double> negative_edge_map(std::span<const double> v, const OperatorParams& params) {
  const long n = static_cast<long>(v.size());
  if (n == 0) throw DimensionError("negative_edge_map: empty vector");

  long shift = 0;
  if (params.has_rational_alpha()) {
    const long long p = params.alpha_num;
    const long long q = params.alpha_den;
    if (p == 0) throw NotRepresentableError("negative_edge_map: alpha = 0 has no half-period");
    // 1/(2 alpha) = q / (2 p) must be an integer lattice translation.
    const long long denom = 2 * p;
    if (q % denom != 0)
      throw NotRepresentableError("negative_edge_map: 1/(2 alpha) is not an integer");
    shift = static_cast<long>(q / denom);
  } else {
    if (params.alpha == 0.0)
      throw NotRepresentableError("negative_edge_map: alpha = 0 has no half-period");
    const double t = 1.0 / (2.0 * params.alpha);
    const double r = std::round(t);
    if (std::fabs(t - r) > 1e-9 * std::max(1.0, std::fabs(t)))
      throw NotRepresentableError("negative_edge_map: 1/(2 alpha) is not an integer");
    shift = static_cast<long>(std::llround(t));
  }

  std::vector<double> out(v.size());
  for (long j = 0; j < n; ++j) {
    const long x = -n / 2 + j;
    const double sign = (x % 2 != 0) ? -1.0 : 1.0;
    out[static_cast<std::size_t>(j)] = sign * v[wrap(j - shift, n)];
  }
  return out;
}

}  // namespace mathieu
