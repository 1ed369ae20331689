#pragma once

#include <stdexcept>

namespace hughes {

/// Argument outside the admissible range of a model function or procedure.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Failure of a numerical procedure (step-size underflow, ordering loss,
/// missing root bracket, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Density range checks absorb roundoff-level excursions up to this amount.
inline constexpr double kDensityTolerance = 1e-12;

}  // namespace hughes
