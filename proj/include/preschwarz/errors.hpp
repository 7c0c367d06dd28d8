#pragma once

#include <stdexcept>
#include <string>

namespace preschwarz {

/// Input outside the domain of an operation (zero argument to a logarithm,
/// out-of-range class parameter, non-finite value, malformed series).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// A bracketing solver was handed an interval without the required sign change.
class BracketError : public std::runtime_error {
public:
  BracketError(const std::string& what, double lo, double hi, double f_lo, double f_hi)
      : std::runtime_error(what), lo_(lo), hi_(hi), f_lo_(f_lo), f_hi_(f_hi) {}

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double f_lo() const noexcept { return f_lo_; }
  double f_hi() const noexcept { return f_hi_; }

private:
  double lo_, hi_, f_lo_, f_hi_;
};

/// A field evaluator failed at a specific disk point.
class EvaluationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace preschwarz
