#pragma once

// Exact Dirichlet heat kernels: the unit-ball eigenmode sum and the
// half-space image construction.

#include "nhit/geometry.hpp"

namespace nhit {

struct SphereModeSumConfig {
  int l_max = 3;
  int k_max = 8;
  void validate() const;
};

/// Σ_{l<=l_max} Σ_{k<=k_max} (2l+1)/(2π) j_l(r u)j_l(r' u)/j_{l+1}(u)² P_l(cos γ) e^{-u²T},
/// u = u_{l,k}. Zero for T <= 0.
double sphere_exact(const Point& x, const Point& y, double T, const SphereModeSumConfig& cfg = {});

/// sphere_exact - K_0. Loses absolute accuracy ~1e-16 K_0 at small T, where
/// both terms are large and nearly equal.
double sphere_exact_subtracted(const Point& x, const Point& y, double T, const SphereModeSumConfig& cfg = {});

/// k_max for which every omitted l = 0 term is below rel_tail × K_0(T) at
/// the given T (at least 8).
int sphere_k_max_for(double T, double rel_tail = 1e-17);

/// With x at the center only l = 0 contributes, and the radial problem for
/// r K is the 1D heat equation on [-1, 1] with odd reflections:
/// K - K_0 = (4πT)^{-3/2} Σ_{m≠0} (r + 2m)/r e^{-(r+2m)²/4T}, |y| = r.
/// Accurate at all T (no cancellation against K_0).
double sphere_center_subtracted_images(double r, double T);

/// K_0(y, x) - K_0(ȳ, x) for x, y strictly on the same side; 0 otherwise.
double plane_exact(const Point& x, const Point& y, double T, const Plane& plane);

}  // namespace nhit
