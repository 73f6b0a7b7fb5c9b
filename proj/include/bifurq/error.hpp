#pragma once

#include <stdexcept>
#include <string>

#include "bifurq/numerics_types.hpp"

namespace bifurq {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain where the problem is posed.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature ran out of subdivisions.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_estimate, double error_estimate)
      : Error(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}
  double best_estimate() const { return best_estimate_; }
  double error_estimate() const { return error_estimate_; }

 private:
  double best_estimate_;
  double error_estimate_;
};

/// The integrand returned NaN or infinity.
class NonFiniteError : public Error {
 public:
  NonFiniteError(const std::string& what, double abscissa) : Error(what), abscissa_(abscissa) {}
  double abscissa() const { return abscissa_; }

 private:
  double abscissa_;
};

/// No sign change in a bracket, or the iteration budget ran out.
class BracketError : public Error {
 public:
  BracketError(const std::string& what, numerics::RootBracket best) : Error(what), best_(best) {}
  numerics::RootBracket best_bracket() const { return best_; }

 private:
  numerics::RootBracket best_;
};

/// Requested norm is at or below the admissibility threshold of the reduction.
class BelowThresholdError : public DomainError {
 public:
  BelowThresholdError(const std::string& what, double threshold)
      : DomainError(what), threshold_(threshold) {}
  double threshold() const { return threshold_; }

 private:
  double threshold_;
};

/// A produced point violates one of its defining identities.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace bifurq
