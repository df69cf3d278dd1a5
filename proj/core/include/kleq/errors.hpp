#pragma once

#include <stdexcept>

namespace kleq {

/// Out-of-range widths, malformed key tuples, wrong scheme for an operation.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A requested computation exceeds a configured memory or width budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An oracle was used in a way its access model forbids (Q1 query inside a
/// search predicate).
class ModelViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace kleq
