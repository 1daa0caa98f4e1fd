#pragma once

#include <stdexcept>
#include <string>

namespace chemowave {

/// Argument outside the mathematical domain of an operation (log of a
/// nonpositive value, p < 1 norm, degenerate wave states, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Invalid scenario or scheme configuration. Maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// NaN, positivity loss or a failed linear solve. Maps to CLI exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller broke a usage contract (window outside grid, too few records, ...).
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// File could not be read or written. Maps to CLI exit code 4.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace chemowave
