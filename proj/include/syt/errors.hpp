#pragma once

#include <stdexcept>
#include <string>

namespace syt {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error {
public:
  using Error::Error;
};

/// The request sits exactly on the constant branch where the quantity only
/// exists as a limit.
class DegenerateError : public Error {
public:
  using Error::Error;
};

/// No non-constant branch exists for the requested half-period.
class NoBranchError : public Error {
public:
  using Error::Error;
};

/// A computed quantity failed its accuracy budget.
class ToleranceError : public Error {
public:
  using Error::Error;
};

/// An iterative solver ran out of iterations.
class ConvergenceError : public Error {
public:
  using Error::Error;
};

/// A one-dimensional search could not bracket an interior extremum.
class BracketError : public Error {
public:
  using Error::Error;
};

/// A volume inequality was violated by more than the quadrature error.
class BoundViolation : public Error {
public:
  BoundViolation(std::string inequality, double margin)
      : Error("bound violated: " + inequality + " (margin " + std::to_string(margin) + ")"),
        inequality_(std::move(inequality)), margin_(margin) {}

  const std::string& inequality() const noexcept { return inequality_; }
  double margin() const noexcept { return margin_; }

private:
  std::string inequality_;
  double margin_;
};

} // namespace syt
