#pragma once

#include <stdexcept>
#include <string>

namespace foxwright {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of a function (e.g. Γ(x) at x <= 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed Fox-Wright / hypergeometric parameter tuple.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Series whose convergence parameter rules out summation at the requested z.
class DivergentSeries : public Error {
 public:
  using Error::Error;
};
using DivergenceError = DivergentSeries;

class NoConvergence : public Error {
 public:
  using Error::Error;
};

// A term's magnitude left the double range while a plain value was requested.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// Kummer-type transform whose auxiliary parameter has a zero denominator.
class SingularTransform : public Error {
 public:
  using Error::Error;
};

class GridError : public Error {
 public:
  using Error::Error;
};

class LengthError : public Error {
 public:
  using Error::Error;
};

// Truncated power series whose remainder is not negligible on the grid.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace foxwright
