#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fractosc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operator parameter (order, exponent, tolerance) is outside its domain.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Sampled input is malformed: non-finite values, wrong length, grid mismatch.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Evaluation requested outside the function's domain (t <= 0, window touching 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A setup that cannot produce meaningful output (too few horizons, coarse grid).
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// Hypotheses of an analytic condition are violated in a way that makes the
/// check itself undefined (for example a zero raised to a negative power).
class ConditionError : public Error {
 public:
  using Error::Error;
};

/// Laplace inversion produced a non-finite contour sum.
class InversionError : public Error {
 public:
  using Error::Error;
};

/// Not enough data for a fit (envelope points, tail nodes).
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

/// Request outside the setting an operation supports (for example order > 1
/// in the comparison principle).
class OutOfScopeError : public Error {
 public:
  using Error::Error;
};

/// A member of a solution family failed.
class FamilyError : public Error {
 public:
  FamilyError(const std::string& what, int member) : Error(what), member_(member) {}
  int member() const noexcept { return member_; }

 private:
  int member_;
};

/// The implicit corrector stopped making progress at a node.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::size_t node)
      : Error(what), node_(node) {}
  std::size_t node() const noexcept { return node_; }

 private:
  std::size_t node_;
};

}  // namespace fractosc
