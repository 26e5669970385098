#pragma once

#include <stdexcept>
#include <string>

namespace qdcat {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument violates a documented precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The dissipative closed forms were asked to leave the underdamped regime.
class RegimeError : public Error {
 public:
  using Error::Error;
};

/// A numerically computed quantity left its admissible range by more than
/// roundoff can explain.
class NumericalIntegrityError : public Error {
 public:
  using Error::Error;
};

/// The Fock-space cutoff cannot hold the requested state within the
/// truncation budget.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, int required_cutoff)
      : Error(what), required_cutoff_(required_cutoff) {}
  int required_cutoff() const noexcept { return required_cutoff_; }

 private:
  int required_cutoff_;
};

/// Adaptive integration did not reach the requested accuracy.
class IntegratorError : public Error {
 public:
  IntegratorError(const std::string& what, double achieved_tolerance)
      : Error(what), achieved_tolerance_(achieved_tolerance) {}
  double achieved_tolerance() const noexcept { return achieved_tolerance_; }

 private:
  double achieved_tolerance_;
};

}  // namespace qdcat
