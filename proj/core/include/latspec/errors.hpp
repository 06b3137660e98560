#pragma once

#include <stdexcept>
#include <string>

namespace latspec {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A matrix handed in as a lattice basis does not have full row rank.
class RankError : public Error {
 public:
  using Error::Error;
};

/// A sublattice is not saturated; the quotient would carry torsion.
class TorsionError : public Error {
 public:
  using Error::Error;
};

/// Lookup of an unknown vertex or out-of-range index.
class KeyError : public Error {
 public:
  using Error::Error;
};

/// A window function does not cover all neighbours required by an operator
/// application.
class WindowTooSmall : public Error {
 public:
  using Error::Error;
};

/// deg(v) - lambda <= 0 somewhere, so per-edge Harnack constants degenerate.
class DegenerateDegree : public Error {
 public:
  using Error::Error;
};

/// No directed path between the requested sites inside the search window.
class NoPathInWindow : public Error {
 public:
  using Error::Error;
};

/// An exponential or integer operation would overflow.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// A power-iteration ratio vanished, which cannot happen for irreducible
/// input started from a positive vector.
class IrreducibilityError : public Error {
 public:
  using Error::Error;
};

/// The requested level lies at or above lambda_0.
class NoSolution : public Error {
 public:
  using Error::Error;
};

/// The requested level set is empty (d = 0).
class EmptySet : public Error {
 public:
  using Error::Error;
};

/// Malformed input document.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An iteration budget ran out. Carries the best enclosure seen so far,
/// when the computation produces one.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& message, long iterations,
                   double best_lower, double best_upper)
      : Error(message),
        iterations(iterations),
        best_lower(best_lower),
        best_upper(best_upper) {}
  explicit ConvergenceError(const std::string& message, long iterations = 0)
      : Error(message), iterations(iterations) {}

  long iterations = 0;
  double best_lower = 0.0;
  double best_upper = 0.0;
};

}  // namespace latspec
