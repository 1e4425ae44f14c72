#pragma once

#include <stdexcept>
#include <string>

namespace hsc {

// Caller supplied something outside an operation's domain.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotTransitive : public InvalidInput {
 public:
  NotTransitive() : InvalidInput("graph is not transitive") {}
};

class Overflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// Numerical method could not certify its answer (too-close curves, coarse grid).
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hsc
