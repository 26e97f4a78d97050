#pragma once

#include <complex>
#include <span>
#include <vector>

#include "mathieu/errors.hpp"

namespace mathieu {

// Parameters of the discrete operator
//
//   (A f)(x) = f(x+1) + f(x-1) + 2 beta cos(2 pi alpha x + theta) f(x)
//
// restricted to the window x = -n/2, ..., n/2 - 1 with either open (finite)
// or cyclic (periodic) boundary.  n must be even and >= 4.  alpha = 0 is
// accepted for construction (constant diagonal); most analysis entry points
// additionally require alpha > 0.
//
// When alpha is known exactly as a rational p/q, store it via
// make_params_rational: the diagonal is then built with the cosine argument
// reduced mod 2 pi through the rational, so huge lattice sites lose no
// precision and alpha = r/n windows are exactly periodic.
struct OperatorParams {
  double alpha = 0.0;
  double beta = 1.0;
  double theta = 0.0;
  int n = 0;
  long long alpha_num = 0;  // exact alpha = alpha_num / alpha_den when alpha_den > 0
  long long alpha_den = 0;

  bool has_rational_alpha() const { return alpha_den > 0; }
  void validate() const;  // throws ParameterError
};

OperatorParams make_params(double alpha, double beta, double theta, int n);
OperatorParams make_params_rational(long long p, long long q, double beta, double theta, int n);

// Diagonal entry 2 beta cos(2 pi alpha x + theta) at real lattice coordinate x.
double potential(const OperatorParams& params, double x);

// Symmetric tridiagonal matrix, stored as diagonal plus one off-diagonal.
struct SymTridiagonal {
  std::vector<double> diag;
  std::vector<double> offdiag;  // size n-1

  int n() const { return static_cast<int>(diag.size()); }
};

// Tridiagonal core plus the two cyclic corner couplings (0, n-1) and (n-1, 0).
struct PeriodicOperator {
  SymTridiagonal tridiag;
  double corner = 1.0;

  int n() const { return tridiag.n(); }
};

// Open-boundary operator on the window; unit hopping, cosine diagonal.
SymTridiagonal build_finite(const OperatorParams& params);

// Cyclic operator on the window; corner couplings equal to 1.
PeriodicOperator build_periodic(const OperatorParams& params);

std::vector<double> apply(const SymTridiagonal& op, std::span<const double> v);
std::vector<double> apply(const PeriodicOperator& op, std::span<const double> v);
std::vector<std::complex<double>> apply(const SymTridiagonal& op,
                                        std::span<const std::complex<double>> v);
std::vector<std::complex<double>> apply(const PeriodicOperator& op,
                                        std::span<const std::complex<double>> v);

// A vector sampled on the shifted unit lattice x_j = x_lo + j.  x_lo may be
// any real; sites stay one unit apart so the hopping terms line up.
struct WindowedVector {
  double x_lo = 0.0;
  std::vector<double> values;

  int size() const { return static_cast<int>(values.size()); }
  double site(int j) const { return x_lo + j; }
};

// Exact application of the doubly infinite operator at the interior sites of
// the window.  The result window shrinks by one site on each side; the input
// must hold at least 3 sites.  params.n is ignored.
WindowedVector apply_infinite(const OperatorParams& params, const WindowedVector& v);

}  // namespace mathieu
