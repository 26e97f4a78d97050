#pragma once

#include <complex>
#include <span>
#include <vector>

#include "mathieu/operators.hpp"

namespace mathieu {

// Cyclic translation (T_a v)(x) = v(x - a) on the window x = -n/2..n/2-1.
std::vector<double> translate_cyclic(std::span<const double> v, long a);
std::vector<std::complex<double>> translate_cyclic(std::span<const std::complex<double>> v,
                                                   long a);

// Modulation (M_b v)(x) = exp(2 pi i b x) v(x); the phase uses the lattice
// coordinate x, not the array index.
std::vector<std::complex<double>> modulate(std::span<const std::complex<double>> v, double b);

// Composition T_a M_b (modulate first, then translate).  Satisfies the Weyl
// commutation relation T_a M_b = exp(-2 pi i a b) M_b T_a.
std::vector<std::complex<double>> translate_modulate(std::span<const std::complex<double>> v,
                                                     long a, double b);

// The spectral reflection M_{1/2} T_{1/(2 alpha)}: maps an eigenvector of the
// periodic operator with eigenvalue lambda to one with -lambda.  At integer
// lattice sites the half-frequency modulation is the real sign (-1)^x, so a
// real input yields a real output (the surviving global phase is dropped).
// Requires 1/(2 alpha) to be an integer; throws NotRepresentableError else.
std::vector<double> negative_edge_map(std::span<const double> v, const OperatorParams& params);

}  // namespace mathieu
