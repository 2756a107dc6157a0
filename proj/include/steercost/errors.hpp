#pragma once

#include <stdexcept>
#include <string>

namespace steercost {

// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input tables or parameters that violate a documented invariant. The CLI
// maps this family to exit code 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class NegativeEntry : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NotNormalized : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class SignalingDetected : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class BadWeights : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class OutOfRange : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DimensionMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class InvalidOperator : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NotRealizable : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class StochasticityViolation : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ZeroTransmission : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class UnknownPreset : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Pivot breakdown or an optimum that fails its certificate. Callers may retry
// on a perturbed problem. The CLI maps this to exit code 3.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace steercost
