#pragma once

#include <stdexcept>
#include <string>

namespace formring {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed ring tables, bad involution, invalid symmetry.
class RingError : public Error {
 public:
  using Error::Error;
};

/// Parameters outside the admissible set of a transvection or generator.
class AdmissibilityError : public Error {
 public:
  using Error::Error;
};

/// Matrix without a two-sided inverse.
class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// An enumeration exceeded its element budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Scenario configuration could not be parsed or is inconsistent.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace formring
