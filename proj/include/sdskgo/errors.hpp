#pragma once

#include <stdexcept>
#include <string>

namespace sdskgo {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Operation needs a nonzero deformation (k^2 > 0) but got the undeformed limit.
class UndeformedLimitError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Invalid (n, l, D) combination.
class QuantumNumberError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The momentum representation does not exist for these parameters (alpha2 = 0).
class UnsupportedRepresentationError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// High-temperature formula evaluated outside its regime of validity.
class OutOfRegimeError : public Error {
 public:
  using Error::Error;
};

/// An iterative numerical routine failed to converge.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace sdskgo
