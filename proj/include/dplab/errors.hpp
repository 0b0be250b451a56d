#pragma once

#include <stdexcept>
#include <string>

namespace dplab {

// Input violates a documented precondition (bad parameters, grid mismatch, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical procedure failed to reach its tolerance (bracketing, convergence,
// step-size underflow, blow-up).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dplab
