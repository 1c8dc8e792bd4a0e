#pragma once

#include <stdexcept>
#include <string>

namespace psb {

/// Raised when an input violates a domain rule: invalid encoding or tour,
/// mismatched instance sizes, exceeded size caps.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a size cap configured for an exponential-time method is
/// exceeded.
class CapExceeded : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Raised when an internal self-check fails. Never expected in practice;
/// indicates an implementation bug rather than a bad input.
class VerificationFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace psb
