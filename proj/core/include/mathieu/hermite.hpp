#pragma once

#include <span>
#include <vector>

#include "mathieu/errors.hpp"

namespace mathieu {

// Polynomial coefficients of the scaled Gaussian-weighted Hermite function
//
//   phi_m(x) = exp(-gamma x^2) * sum_l c_{m,l} (sqrt(gamma) x)^{2l + (m mod 2)}
//
// values[l] = c_{m,l}.  Computed by the two-term ratio recurrence
//
//   even m:  c_{m,l} = c_{m,l-1} * 4 (2l - 2 - m) / (2l (2l - 1))
//   odd  m:  c_{m,l} = c_{m,l-1} * 4 (2l - 1 - m) / (2l (2l + 1))
//
// seeded at l = 0 with m! (-1)^{m/2} / (m/2)!  (even) and
// m! 2 sqrt(2) (-1)^{(m-1)/2} / ((m-1)/2)!  (odd).  The recurrence multiplies
// before dividing, which keeps the integer-valued even coefficients exact in
// floating point for small m.  Doubles overflow for m beyond roughly 260;
// callers bound m.
struct HermiteCoefficients {
  int m = 0;
  std::vector<double> values;
};

HermiteCoefficients hermite_coefficients(int m);

// Pointwise value phi_m(x).  Equals exp(-gamma x^2) H_m(sqrt(2 gamma) x) with
// H_m the physicists' Hermite polynomial, which is how it is evaluated: the
// three-term recurrence stays stable at orders where the monomial expansion
// has already lost every digit to cancellation.  Supported up to m ~ 150;
// gamma must be positive.
double hermite_eval(int m, double gamma, double x);

// phi_m sampled on the window x_j = -n/2 + j, j = 0..n-1, with the analytic
// argument shifted by `shift` (any real) and an optional (-1)^x factor.
// The modulation sign uses the lattice coordinate x_j, not the array index.
struct HermiteVector {
  int m = 0;
  double gamma = 0.0;
  int n = 0;
  double shift = 0.0;
  bool modulated = false;
  std::vector<double> samples;
};

HermiteVector sample_periodic(int m, double gamma, int n, double shift, bool modulated);

// Number of sign alternations along v after skipping entries with
// |entry| <= zero_tol.  Throws DegenerateVectorError when nothing survives.
int sign_changes(std::span<const double> v, double zero_tol);

// Conventional skip threshold: 1e-12 * max|v|.
double default_zero_tol(std::span<const double> v);

// Diagnostics for when the sampled phi_m provably has exactly m sign changes:
// all m zeros lie within roots_interval_radius of the origin and consecutive
// zeros are at least min_zero_spacing apart, so a unit lattice cannot miss
// them once the window is wide enough.
struct SignChangeRegime {
  double roots_interval_radius = 0.0;  // sqrt((m+1)/gamma)
  double min_zero_spacing = 0.0;       // pi / sqrt(2 gamma (2m+1))
  bool regime_ok = false;              // 4/n^(2-eps) <= gamma <= n^(-eps) and m < n^eps - 1
};

SignChangeRegime sign_change_regime(int m, double gamma, int n, double epsilon);

}  // namespace mathieu
