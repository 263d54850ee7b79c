#pragma once

#include <stdexcept>
#include <string>

namespace coxkl {

// Input could not be parsed or violates a documented precondition.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A well-formed request that cannot be completed: integer overflow, a length
// bound too small for the requested region, inconsistent supplied data.
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OverflowError : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace coxkl
