#pragma once

#include <stdexcept>
#include <string>

namespace fracproc {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An argument violates an operation's precondition.
class DomainError : public Error {
public:
  using Error::Error;
};

/// A result exceeds the double range. `log_value` carries ln|result|.
class OverflowError : public Error {
public:
  OverflowError(const std::string& what, double log_value)
      : Error(what), log_value_(log_value) {}

  double log_value() const noexcept { return log_value_; }

private:
  double log_value_;
};

/// Floating-point cancellation would leave too few significant digits.
class PrecisionError : public Error {
public:
  using Error::Error;
};

/// An iterative or marching scheme could not proceed (singular step,
/// runaway path, exhausted term budget).
class NumericalError : public Error {
public:
  using Error::Error;
};

}  // namespace fracproc
