#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fcpm {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Point outside the convergence domain of the series.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Prefactor power requested on the cut (-inf, 0].
class BranchError : public Error {
 public:
  using Error::Error;
};

// Exact-only operation invoked on floating parameters, or modes mixed.
class ModeError : public Error {
 public:
  using Error::Error;
};

class PoleError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class HypothesisError : public Error {
 public:
  using Error::Error;
};

// Raised when an exactly-known symmetry of R(z) fails; always an arithmetic bug.
class InvarianceError : public Error {
 public:
  using Error::Error;
};

// Parameter input rejected; `conditions` names every violated condition.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, std::vector<std::string> conditions)
      : Error(what), conditions_(std::move(conditions)) {}

  const std::vector<std::string>& conditions() const { return conditions_; }

 private:
  std::vector<std::string> conditions_;
};

}  // namespace fcpm
