#pragma once

// Thin adaptors over Boost.Math quadrature that turn an unmet tolerance into a
// typed QuadratureFailure instead of a silently inaccurate number.

#include <functional>

namespace nhit::quad {

using Integrand = std::function<double(double)>;

struct Options {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  unsigned max_depth = 15;
  /// Accept the result when the error estimate is within this multiple of
  /// the requested tolerance.
  double slack = 10.0;
};

/// Adaptive Gauss–Kronrod (15/31) on [a, b]; infinite limits allowed.
double gk(const Integrand& f, double a, double b, const Options& opt = {});

/// tanh-sinh on finite [a, b]; tolerates integrable endpoint singularities.
double tanh_sinh(const Integrand& f, double a, double b, const Options& opt = {});

/// exp-sinh on [a, +inf).
double exp_sinh(const Integrand& f, double a, const Options& opt = {});

}  // namespace nhit::quad
