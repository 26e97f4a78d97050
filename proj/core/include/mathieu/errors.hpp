#pragma once

#include <stdexcept>

namespace mathieu {

// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid parameter values: odd n, beta <= 0, out-of-range alpha, bad ranks.
struct ParameterError : Error {
  using Error::Error;
};

// Operand sizes do not match.
struct DimensionError : Error {
  using Error::Error;
};

// A vector is numerically zero where a nonzero one is required.
struct DegenerateVectorError : Error {
  using Error::Error;
};

// Zero off-diagonal entry: the matrix splits into independent blocks and the
// caller must deflate before calling a solver that assumes an unreduced matrix.
struct SplitMatrixError : Error {
  using Error::Error;
};

// Iterative solver did not reach its tolerance within the iteration budget.
struct ConvergenceError : Error {
  using Error::Error;
};

// Window too small for the requested stencil.
struct WindowError : Error {
  using Error::Error;
};

// Operation needs an integer lattice shift that the parameters do not provide.
struct NotRepresentableError : Error {
  using Error::Error;
};

}  // namespace mathieu
