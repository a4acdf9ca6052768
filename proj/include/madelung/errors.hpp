#pragma once

#include <stdexcept>
#include <string>

namespace madelung {

// Rejected input; field() names the offending parameter.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// A query outside the finite support of a solution.
class OutOfSupportError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// No parameter value reaches the requested target.
class NoSolutionError : public std::runtime_error {
 public:
  NoSolutionError(const std::string& what, double feasible_lo, double feasible_hi)
      : std::runtime_error(what), lo_(feasible_lo), hi_(feasible_hi) {}

  double feasible_lo() const noexcept { return lo_; }
  double feasible_hi() const noexcept { return hi_; }

 private:
  double lo_;
  double hi_;
};

}  // namespace madelung
