#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace acsais {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed user input: bad files, invalid fields, inconsistent sizes.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An iterative method ran out of iterations. Carries the last residual and,
/// when meaningful, the last iterate.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual,
                   std::vector<double> last_iterate = {})
      : Error(what), residual_(residual), last_iterate_(std::move(last_iterate)) {}

  double residual() const noexcept { return residual_; }
  const std::vector<double>& last_iterate() const noexcept { return last_iterate_; }

 private:
  double residual_;
  std::vector<double> last_iterate_;
};

/// Floating point breakdown: iterate left the positive cone, NaN, integrator
/// instability and the like.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A ratio in the joint descriptor has a vanishing denominator at `node`.
class ZeroDenominatorError : public Error {
 public:
  ZeroDenominatorError(const std::string& what, int node) : Error(what), node_(node) {}
  int node() const noexcept { return node_; }

 private:
  int node_;
};

/// Exhaustive subset enumeration refused because n is above the budget.
class BudgetExceededError : public Error {
 public:
  using Error::Error;
};

}  // namespace acsais
