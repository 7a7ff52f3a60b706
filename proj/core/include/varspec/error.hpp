#pragma once

#include <stdexcept>
#include <string>

namespace varspec {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument outside the domain of the operation (negative width, bad index, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature ran out of subdivisions before meeting its tolerance.
class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, double best_estimate, double achieved_error)
      : Error(what), best_estimate_(best_estimate), achieved_error_(achieved_error) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double best_estimate_;
  double achieved_error_;
};

/// Raised by the variational engine when no feasible parameter point exists or the
/// objective turns non-finite.
class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace varspec
