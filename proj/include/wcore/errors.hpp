#pragma once

#include <stdexcept>
#include <string>

namespace wcore {

// Malformed call: wrong dimension, missing weight, out-of-range parameter.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operands drawn from different scalar backends (or prime fields with different moduli).
class BackendMismatch : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

class DimensionMismatch : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

// A Hermitian/invertibility requirement on a weight does not hold.
class InvalidWeight : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

// A certificate handed to a reconstruction routine violates one of its hypotheses.
class InvalidCertificate : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("division by zero") {}
};

// Raised when a closed-form construction produces a value that fails its own
// defining equations. Indicates a library bug, never a property of the input.
class VerificationFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace wcore
