#pragma once

#include <stdexcept>
#include <string>

namespace twopoint {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition was violated (bad grid size, point outside the
/// disk, mismatched sample counts, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The parameter t makes the constrained-kernel formula singular.
class DegenerateParameter : public Error {
 public:
  using Error::Error;
};

/// The symbol does not satisfy m < 0 < M for the given c and beta.
class HypothesisFailed : public Error {
 public:
  using Error::Error;
};

/// psi = 2 Re(c u) / (phi - lambda) takes negative values: lambda is not an
/// admissible relative eigenvalue for this c.
class SignFailure : public Error {
 public:
  using Error::Error;
};

/// A requested endpoint eigenvalue has a non-integrable density.
class IntegrabilityFailure : public Error {
 public:
  using Error::Error;
};

/// A numerical routine produced a result that contradicts a structural
/// guarantee (wrong sign-change count, eigensolver failure, ...).
class NumericalBreakdown : public Error {
 public:
  using Error::Error;
};

}  // namespace twopoint
