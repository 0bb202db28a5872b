#pragma once

#include <stdexcept>
#include <string>

namespace tla {

// Base of everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad parameter values (negative frequencies, k2 >= 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Step size collapsed inside the integrator.
class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, double worst_x)
      : Error(what), worst_x(worst_x) {}
  double worst_x;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what), residual(residual) {}
  double residual;
};

// Special parameter points where a route is singular by construction
// (gamma = 0 in the recurrence, nu at 0 or 1/2 in the quadrature formulas).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

class ConditioningError : public Error {
 public:
  ConditioningError(const std::string& what, double condition)
      : Error(what), condition(condition) {}
  double condition;
};

// Sign rule of the WKB hyper-Raman amplitudes needs exactly one of
// Omega +- nu to be an integer.
class IntegralityError : public Error {
 public:
  IntegralityError(const std::string& what, double frac_plus, double frac_minus)
      : Error(what), frac_plus(frac_plus), frac_minus(frac_minus) {}
  double frac_plus, frac_minus;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace tla
