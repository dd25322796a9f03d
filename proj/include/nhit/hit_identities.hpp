#pragma once

// Functional relations between hit functions of different dimension D and
// order n. Everything acts on functional forms of the segment lengths, not on
// point sets: Δ_i on the two sides of a dimension shift live in different
// spaces.

#include <functional>
#include <span>

#include "nhit/hitfn.hpp"

namespace nhit {

struct DimensionShiftConfig {
  /// Relative finite-difference step (in units of min(sqrt(T), 2Δ_i));
  /// non-positive picks 1.5 eps^{1/(m+6)} for m differentiated variables.
  double rel_step = 0.0;
  /// Semi-infinite Δ integrals are truncated at Δ_i + tail * sqrt(T), where
  /// Gaussian decay in the total length makes the remainder < e^{-tail²/4}.
  double tail = 12.0;
  double rel_tol = 1e-9;
};

/// Π_i (-1/(2πΔ_i)) ∂/∂Δ_i applied to a D-dimensional form of order n, giving
/// the (D+2)-dimensional form.
HitForm raise_dimension(HitForm h, int n, DimensionShiftConfig cfg = {});

/// Π_i 2π ∫_{Δ_i}^∞ dΔ_i Δ_i applied to a D-dimensional form of order n,
/// giving the (D-2)-dimensional form.
HitForm lower_dimension(HitForm h, int n, DimensionShiftConfig cfg = {});

/// Insert one more point: from the order-(n-1) form build the order-n form
/// H_n(Δ_1..Δ_{n+1}; T) = ∫_0^T H_{n-1}(Δ_1..Δ_n; τ) K_0^{(D)}(Δ_{n+1}; T-τ) dτ.
HitForm raise_order(HitForm h_prev, int D, double rel_tol = 1e-10);

/// Point form: q is the order-n query; its last intermediate point is the one
/// being inserted.
double raise_order(const HitForm& h_prev, const HitQuery& q, int D, double rel_tol = 1e-10);

struct LowerOrderConfig {
  /// Constant in front of (∂_T - ∇²_y). The heat kernel with m = 1/2 obeys
  /// (∂_T - ∇²)K_0 = δ, which makes the identity hold with c = 1.
  double c = 1.0;
  /// Relative step of the 5-point stencils in |y - z_{n-1}| and in T.
  double rel_step = 0.02;
  double rel_tol = 1e-13;
};

/// Remove the last intermediate point of an order-n form by integrating it
/// over R^D and applying c (∂_T - ∇²_y). `deltas_prev` are the order-(n-1)
/// segment lengths Δ_1..Δ_{n-1}, |y - z_{n-1}|. Supports D = 1, 2, 3.
double lower_order(const HitForm& h_n, std::span<const double> deltas_prev, double T, int D,
                   const LowerOrderConfig& cfg = {});

/// ∫ d^D z_n H_n, as a function of ρ = |y - z_{n-1}| (the quantity the
/// differential operator in lower_order acts on).
double integrate_last_point(const HitForm& h_n, std::span<const double> deltas_prev, double T, int D,
                            double rel_tol = 1e-13);

/// (∂_T - ∇²_y) H at fixed z_1..z_n, y moving (only Δ_{n+1} depends on y).
/// Vanishes for y away from z_n.
double green_residual(const HitForm& h, std::span<const double> deltas, double T, int D,
                      double rel_step = 0.02);

/// D = 1 hit function of fixed order as a function of the total length.
using D1Form = std::function<double(double Delta, double T)>;

D1Form d1_form(int n);

enum class StepDirection { up, down };

/// up: H_n(Δ) = ½ ∫_Δ^∞ H_{n-1}; down: H_{n-1}(Δ) = -2 ∂_Δ H_n.
D1Form d1_order_step(StepDirection dir, D1Form h, double rel_tol = 1e-12);

}  // namespace nhit
