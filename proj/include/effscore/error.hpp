#pragma once

#include <stdexcept>
#include <string>

namespace effscore {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (CSV rows, JSON config, command line).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A time series does not span the integration window.
class CoverageError : public Error {
 public:
  using Error::Error;
};

/// A parameter or input value violates a documented invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The integrated cost exceeded C*T, so C was not an upper bound on the cost rate.
class CostBoundError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A black-box score function is not affine in its transformed variables.
class NonAffineError : public Error {
 public:
  using Error::Error;
};

}  // namespace effscore
