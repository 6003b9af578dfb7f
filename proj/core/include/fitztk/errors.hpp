#pragma once

#include <stdexcept>
#include <string>

namespace fitztk {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vector or operator dimensions do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A value-type invariant was violated at construction.
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// (+inf) + (-inf) was requested; never produced silently.
class IndeterminateSum : public Error {
 public:
  IndeterminateSum() : Error("indeterminate extended-real sum (+inf) + (-inf)") {}
};

/// A linear operator whose symmetric part fails positive semidefiniteness.
class NotMonotoneError : public InvariantError {
 public:
  NotMonotoneError(const std::string& what, double min_eigenvalue)
      : InvariantError(what), min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

/// Malformed input file (operator spec or grid CSV).
class FileParseError : public Error {
 public:
  using Error::Error;
};

/// An iterative solver hit its cap without meeting its residual target.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold for the inputs.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A constructive search failed to produce a witness it is expected to find.
class SearchFailure : public Error {
 public:
  using Error::Error;
};

/// The segment probed by a bisection leaves the domain of the gap function.
class DomainExitError : public Error {
 public:
  using Error::Error;
};

}  // namespace fitztk
