#pragma once

#include <stdexcept>
#include <string>

namespace ncosc {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An input violates a mathematical precondition (e.g. Re(alpha) <= 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Parameters reach a configuration where a closed form has a vanishing
// denominator.
class SingularConfigurationError : public Error {
 public:
  using Error::Error;
};

// An eigenbasis is too close to singular to be inverted reliably.
class IllConditionedError : public Error {
 public:
  using Error::Error;
};

// A property that should hold for all valid inputs did not.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

// A reduced formula was requested outside the parameter subspace it covers.
class UnsupportedCaseError : public Error {
 public:
  using Error::Error;
};

// Numerical grid or solver settings are unusable.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

}  // namespace ncosc
