#pragma once

#include <stdexcept>
#include <string>

namespace fracbessel {

// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
  using Error::Error;
};

// Evaluation requested at a pole of gamma/digamma/polygamma.
struct PoleError : Error {
  using Error::Error;
};

// Malformed equation input; message lists every violation found.
struct ValidationError : Error {
  using Error::Error;
};

// Caputo derivative does not exist for the requested exponent.
struct DivergenceError : Error {
  using Error::Error;
};

// Derivative/log-power order beyond the supported cap.
struct UnsupportedOrderError : Error {
  using Error::Error;
};

// Series recursion denominator vanished: the root is dummy (or nearly so).
struct DummyRootError : Error {
  int index;
  DummyRootError(const std::string& msg, int n) : Error(msg), index(n) {}
};

// Truncation selection could not reach the requested tail bound.
struct TruncationError : Error {
  double achieved;
  TruncationError(const std::string& msg, double bound)
      : Error(msg), achieved(bound) {}
};

// Adaptive quadrature failed to converge to the requested accuracy.
struct QuadratureError : Error {
  double achieved;
  QuadratureError(const std::string& msg, double estimate)
      : Error(msg), achieved(estimate) {}
};

// Bad scan window / too many roots for the configured cap.
struct ScanError : Error {
  using Error::Error;
};

}  // namespace fracbessel
