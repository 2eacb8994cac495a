#pragma once

#include <stdexcept>
#include <string>

namespace geolab {

// A violated precondition on user-supplied parameters.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A search or iteration ran out of budget before it could certify its answer.
class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical routine failed (no shooting hit, step underflow, ...).
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Output could not be written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace geolab
