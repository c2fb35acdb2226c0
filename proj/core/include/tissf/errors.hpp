#pragma once

#include <stdexcept>
#include <string>

namespace tissf {

// Base class for every exception thrown by this library. Solver outcomes that
// are expected in normal operation (LP infeasibility, QP infeasibility
// certificates, incompatible-nominal diagnostics) are reported through status
// fields on the result types instead; exceptions are reserved for precondition
// violations and numerical breakdowns.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A vector or matrix argument contained NaN or infinity.
struct NonFiniteError : Error {
  using Error::Error;
};

// Argument dimensions do not match (or are outside the supported range).
struct DimensionError : Error {
  using Error::Error;
};

// An iterative method hit its iteration cap before converging.
struct MaxIterationsError : Error {
  using Error::Error;
};

// A simplex pivot fell below the breakdown threshold.
struct NumericalBreakdownError : Error {
  using Error::Error;
};

// A 2-variable LP constraint reads 0*y1 + 0*y2 >= rhs with rhs > 0.
struct DegenerateConstraintError : Error {
  using Error::Error;
};

// The brute-force QP oracle only supports up to three inputs.
struct DimensionTooLargeError : Error {
  using Error::Error;
};

// Domain sampling produced no points inside the safe set.
struct EmptySampleSetError : Error {
  using Error::Error;
};

// Every sample was excluded as degenerate; no tuning constraint remains.
struct AllDegenerateError : Error {
  using Error::Error;
};

} // namespace tissf
