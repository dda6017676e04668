#pragma once

#include <stdexcept>
#include <string>

namespace hua {

/// Operands of different complex dimension.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A point lies outside the set an operation is defined on.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Kernel evaluated at 1 − ⟨z,ζ⟩ = 0.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Invalid run configuration; raised before any check runs.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed polynomial or coordinate literal.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace hua
