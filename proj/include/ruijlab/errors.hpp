#ifndef RUIJLAB_ERRORS_HPP
#define RUIJLAB_ERRORS_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace ruijlab {

// Input outside the admissible domain (strip conditions, parameter ranges
// needed for convergence, unsupported coordinate regimes).
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Structurally invalid parameters (non-positive tolerances, bad arity, ...).
struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Requested accuracy could not be certified within the subdivision budget.
struct ToleranceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Evaluation point too close to a pole of the function being evaluated.
struct NearPoleError : DomainError {
  NearPoleError(const std::string& msg, std::complex<double> where, double distance)
      : DomainError(msg), location(where), distance(distance) {}
  std::complex<double> location;
  double distance;
};

// A coefficient denominator (sin / sinh factor) is numerically zero.
struct SingularCoefficientError : DomainError {
  using DomainError::DomainError;
};

// Integration strategy not applicable to the requested dimension.
struct StrategyError : std::logic_error {
  using std::logic_error::logic_error;
};

// An integrand or special-function evaluation produced NaN/Inf.
struct NonFiniteError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ruijlab

#endif
