#pragma once

#include <functional>
#include <span>
#include <vector>

#include "nhit/geometry.hpp"

namespace nhit {

/// n-hit function H_0(z_1..z_n | y, x; T) request. Units: m = 1/2, hbar = 1.
struct HitQuery {
  PolygonalPath path;
  double T;
};

/// A hit function as a functional form of the segment lengths
/// (Δ_1, ..., Δ_{n+1}) and the transition time.
using HitForm = std::function<double(std::span<const double> deltas, double T)>;

/// Free heat kernel (4πτ)^{-D/2} e^{-r²/4τ} θ(τ).
double free_kernel(const Point& x, const Point& y, double tau, int D);
double free_kernel_r(double r, double tau, int D);

double hit_d1(const HitQuery& q);
double hit_d3(const HitQuery& q);
/// D = 2, one intermediate point.
double hit_d2_n1(const HitQuery& q);

/// Same closed forms on segment lengths. hit_d1 only needs Σ Δ_i.
double hit_d1_form(std::span<const double> deltas, double T);
double hit_d3_form(std::span<const double> deltas, double T);
double hit_d2_n1_form(std::span<const double> deltas, double T);

/// D = 1 hit function of order n as a function of the total length only.
double hit_d1_total(int n, double Delta, double T);

/// Same value via e^{-z²} (d/dz)^{n-1} erfcx(z) / (4^n (n-1)!), z = Δ/2√T.
double hit_d1_rodrigues(int n, double Delta, double T);

/// Closed form in dimension D (1, 3; 2 only for n = 1).
HitForm closed_form(int D);
double hit_closed(const HitQuery& q);

struct BromwichConfig {
  /// Lower bound on the imaginary offset of the contour. The contour is moved
  /// up to the saddle of e^{-p²T + ipΔ} whenever that lies higher.
  double contour_shift = 1e-6;
  /// Truncation of the real part of p; non-positive selects e^{-p²T} < 1e-16.
  double p_max = 0.0;
  /// Adaptive refinement depth for the Gauss–Kronrod panels.
  int n_nodes = 15;
  double rel_tol = 1e-10;
};

struct BromwichResult {
  double value;
  double imag;  // residual imaginary part; ~0 for a correct contour
};

BromwichResult hit_bromwich_detail(std::span<const double> deltas, double T, int D,
                                   const BromwichConfig& cfg = {});
double hit_bromwich(const HitQuery& q, int D, const BromwichConfig& cfg = {});

}  // namespace nhit
