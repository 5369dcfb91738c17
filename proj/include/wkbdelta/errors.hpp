#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wkbdelta {

// Invalid arguments or parameter combinations. The CLI maps these to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DomainError : public InputError {
 public:
  using InputError::InputError;
};

// The requested change of variables does not exist for this family/parameters.
class UnsupportedMapError : public InputError {
 public:
  using InputError::InputError;
};

class NotImplementedError : public InputError {
 public:
  using InputError::InputError;
};

class DivergenceError : public InputError {
 public:
  using InputError::InputError;
};

// Numerical failures. The CLI maps these to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AccuracyError : public NumericalError {
 public:
  AccuracyError(const std::string& what, double best_estimate, double error_bound)
      : NumericalError(what), best_estimate_(best_estimate), error_bound_(error_bound) {}

  double best_estimate() const { return best_estimate_; }
  double error_bound() const { return error_bound_; }

 private:
  double best_estimate_;
  double error_bound_;
};

class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, std::size_t converged_prefix)
      : NumericalError(what), converged_prefix_(converged_prefix) {}

  // Number of leading levels that did converge before the cap was hit.
  std::size_t converged_prefix() const { return converged_prefix_; }

 private:
  std::size_t converged_prefix_;
};

class SolverError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class PmsFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class FormulaRangeError : public NumericalError {
 public:
  FormulaRangeError(const std::string& what, long level) : NumericalError(what), level_(level) {}
  long level() const { return level_; }

 private:
  long level_;
};

}  // namespace wkbdelta
