#pragma once

#include <stdexcept>
#include <string>

namespace nhit {

/// Invalid argument or configuration (bad dimension, point outside domain, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Some segment of a polygonal path has zero length where the closed form
/// divides by it (D >= 2).
class SingularConfiguration : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Adaptive quadrature, root bracketing or tail truncation did not reach the
/// requested tolerance.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class QuadratureFailure : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

/// A Padé or Shanks denominator vanished.
class DegenerateApproximant : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

}  // namespace nhit
