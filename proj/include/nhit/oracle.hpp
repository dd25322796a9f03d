#pragma once

// Brute-force evaluators of the n-hit function that do not rely on any closed
// form: the proper-time integral over chronologically ordered hitting times,
// and a sampled Brownian bridge.

#include <cstdint>

#include "nhit/hitfn.hpp"

namespace nhit {

/// ∫_{0<τ_1<...<τ_n<T} Π_k K_0(Δ_k; τ_k - τ_{k-1}) by nested adaptive
/// tanh-sinh quadrature (τ_0 = 0, τ_{n+1} = T). n <= 3.
double hit_by_time_quadrature(const HitQuery& q, int D, double rel_tol = 1e-8);

struct McConfig {
  long n_paths = 100'000;
  /// Bridge positions are sampled at the midpoints of n_steps equal slices.
  int n_steps = 400;
  /// Edge of the cube around each z_i that counts as a hit.
  double bin_width = 0.1;
  std::uint64_t seed = 1;
  /// 0: hardware concurrency. Results do not depend on this.
  unsigned n_workers = 0;

  void validate() const;
};

struct McEstimate {
  double estimate;   // hit function
  double std_error;  // 1σ of estimate
  /// estimate / K_0(y, x; T), the bridge expectation; 1 for n = 0.
  double normalized;
  long hits;  // paths with a non-zero contribution
};

/// Brownian bridges x -> y with generator ∇² (variance 2t per coordinate);
/// δ(x(τ_i) - z_i) is replaced by the indicator of a cube of edge bin_width
/// divided by its volume, visits taken in the canonical order z_1, ..., z_n.
/// n <= 2.
McEstimate hit_by_monte_carlo(const HitQuery& q, int D, const McConfig& cfg = {});

}  // namespace nhit
