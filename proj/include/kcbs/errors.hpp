#pragma once

#include <stdexcept>
#include <string>

namespace kcbs {

// Raised when an argument violates an operation's precondition
// (non-unit direction, non-orthogonal pair, bad probability table, n = 0).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// The hidden-variable model is only defined for real state vectors.
class UnsupportedStateError : public std::invalid_argument {
 public:
  explicit UnsupportedStateError(const std::string& what) : std::invalid_argument(what) {}
};

// Conditioning on an event of probability zero.
class UndefinedConditionalError : public std::domain_error {
 public:
  explicit UndefinedConditionalError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace kcbs
