#pragma once

#include <stdexcept>
#include <string>

namespace felphase {

/// Invalid input to a physics operation (non-positive alpha, m outside [0,1], ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// A numerical method could not deliver its contract (truncation too small,
/// quadrature did not converge, eigen-solver failure).
class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent scenario configuration.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace felphase
