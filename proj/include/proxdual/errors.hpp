// Copyright (c) proxdual contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace proxdual {

/// Base class for all errors thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Bad argument values: dimension/space mismatches, non-finite input,
/// parameters outside their admissible range.
struct InvalidInputError : Error {
  using Error::Error;
};

/// Construction-time structural problems (rank-deficient constraint matrix,
/// non-orthonormal basis, inconsistent operator dimensions).
struct StructuralError : Error {
  using Error::Error;
};

/// A requested optional capability (function value, conjugate value) is
/// not available for the given object.
struct CapabilityError : Error {
  using Error::Error;
};

/// An inner numerical routine failed to reach its tolerance.
struct NumericalError : Error {
  double achieved_residual;
  NumericalError(const std::string& msg, double residual)
      : Error(msg), achieved_residual(residual) {}
};

/// Iterates left the finite range; carries the iteration count at failure.
struct DivergenceError : Error {
  int iterations;
  DivergenceError(const std::string& msg, int iters)
      : Error(msg), iterations(iters) {}
};

}  // namespace proxdual
