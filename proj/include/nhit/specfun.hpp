#pragma once

#include <complex>
#include <map>
#include <utility>

namespace nhit {

double erfc(double z);

/// e^{z^2} erfc(z), finite for all z where the product is representable.
double erfcx(double z);

/// n-fold iterated integral of erfc, n >= -1; i^{-1}erfc(z) = 2e^{-z^2}/sqrt(pi).
double inerfc(int n, double z);

/// e^{z^2} i^n erfc(z). Avoids underflow for large positive z.
double inerfc_scaled(int n, double z);

/// Modified Bessel function K_0(x), x > 0.
double bessel_k0(double x);

double spherical_bessel_j(int l, double x);

/// k-th positive zero of j_l (k >= 1), refined to 1e-12 absolute.
double bessel_zero(int l, int k);

/// Lazily built table of spherical Bessel zeros u_{l,k}. Built entries are
/// never modified, so a fully built table may be shared read-only.
class BesselZeroTable {
 public:
  BesselZeroTable() = default;
  BesselZeroTable(int l_max, int k_max);

  /// Ensure entries for l <= l_max, k <= k_max exist.
  void build(int l_max, int k_max);

  double operator()(int l, int k) const;
  double at(int l, int k);

 private:
  double compute(int l, int k);
  std::map<std::pair<int, int>, double> entries_;
};

double legendre_p(int l, double x);

std::complex<double> hermite_h(int n, std::complex<double> z);

}  // namespace nhit
