#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nhit/errors.hpp"
#include "nhit/quadrature.hpp"
#include "nhit/specfun.hpp"

using namespace nhit;
using doctest::Approx;

TEST_CASE("erfc and erfcx against the standard library") {
  for (double z : {-3.0, -0.5, 0.0, 0.3, 1.0, 4.0, 9.0}) {
    CHECK(nhit::erfc(z) == Approx(std::erfc(z)).epsilon(1e-14));
    if (z < 5.0) CHECK(erfcx(z) == Approx(std::exp(z * z) * std::erfc(z)).epsilon(1e-13));
  }
  // asymptotic 1/(sqrt(pi) z) (1 - 1/(2z^2) + 3/(4z^4))
  const double z = 40.0;
  const double asym = (1.0 - 0.5 / (z * z) + 0.75 / std::pow(z, 4)) / (std::sqrt(std::numbers::pi) * z);
  CHECK(erfcx(z) == Approx(asym).epsilon(1e-9));
}

TEST_CASE("iterated erfc equals repeated integration of erfc") {
  // i^n erfc(z) = ∫_z^∞ i^{n-1} erfc(t) dt
  for (double z : {-1.0, 0.0, 0.4, 2.0}) {
    for (int n = 1; n <= 4; ++n) {
      const double q = quad::exp_sinh([n](double t) { return inerfc(n - 1, t); }, z, {1e-13});
      CHECK(inerfc(n, z) == Approx(q).epsilon(1e-11));
    }
  }
  CHECK(inerfc(-1, 0.7) == Approx(2.0 / std::sqrt(std::numbers::pi) * std::exp(-0.49)));
  CHECK(inerfc(0, 0.7) == Approx(std::erfc(0.7)));
  // i^n erfc(0) = 1 / (2^n Γ(n/2 + 1))
  for (int n = 0; n <= 6; ++n) {
    CHECK(inerfc(n, 0.0) == Approx(1.0 / (std::pow(2.0, n) * std::tgamma(0.5 * n + 1.0))).epsilon(1e-14));
  }
}

TEST_CASE("scaled iterated erfc survives large arguments") {
  for (int n = 0; n <= 4; ++n) {
    CHECK(inerfc_scaled(n, 3.0) == Approx(std::exp(9.0) * inerfc(n, 3.0)).epsilon(1e-12));
    const double big = inerfc_scaled(n, 50.0);
    CHECK(std::isfinite(big));
    CHECK(big > 0.0);
    // leading term 2 / (sqrt(pi) (2z)^{n+1})
    CHECK(big == Approx(2.0 / (std::sqrt(std::numbers::pi) * std::pow(100.0, n + 1))).epsilon(2e-3));
  }
}

TEST_CASE("modified Bessel K0 against the standard library") {
  for (double x : {1e-3, 0.1, 1.0, 5.0, 30.0}) CHECK(bessel_k0(x) == Approx(std::cyl_bessel_k(0.0, x)).epsilon(1e-13));
  CHECK_THROWS_AS(bessel_k0(0.0), DomainError);
}

TEST_CASE("spherical Bessel functions and their zeros") {
  for (int l = 0; l <= 5; ++l) {
    for (double x : {0.0, 0.01, 1.0, 7.3, 40.0}) {
      CHECK(spherical_bessel_j(l, x) == Approx(std::sph_bessel(l, x)).epsilon(1e-12).scale(1e-300));
    }
  }
  // l = 0 zeros are kπ
  for (int k = 1; k <= 12; ++k) CHECK(bessel_zero(0, k) == Approx(k * std::numbers::pi).epsilon(1e-13));
  // zeros of j_1 solve tan u = u
  CHECK(bessel_zero(1, 1) == Approx(4.493409457909064).epsilon(1e-13));
  for (int l = 1; l <= 5; ++l) {
    double prev = 0.0;
    for (int k = 1; k <= 12; ++k) {
      const double u = bessel_zero(l, k);
      CHECK(std::abs(std::sph_bessel(l, u)) < 1e-11);
      CHECK(u > prev);
      // interlacing: u_{l-1,k} < u_{l,k} < u_{l-1,k+1}
      CHECK(u > bessel_zero(l - 1, k));
      CHECK(u < bessel_zero(l - 1, k + 1));
      prev = u;
    }
  }
  BesselZeroTable table(3, 8);
  CHECK(table(2, 5) == bessel_zero(2, 5));
  CHECK_THROWS(table(4, 1));
}

TEST_CASE("Legendre polynomials against the standard library") {
  for (int l = 0; l <= 8; ++l) {
    for (double x : {-1.0, -0.3, 0.0, 0.6, 1.0}) CHECK(legendre_p(l, x) == Approx(std::legendre(l, x)).epsilon(1e-13));
  }
}

TEST_CASE("Hermite polynomials by recurrence") {
  const std::complex<double> z(0.4, -1.1);
  CHECK(std::abs(hermite_h(0, z) - 1.0) < 1e-15);
  CHECK(std::abs(hermite_h(1, z) - 2.0 * z) < 1e-15);
  CHECK(std::abs(hermite_h(3, z) - (8.0 * z * z * z - 12.0 * z)) < 1e-13);
  CHECK(std::abs(hermite_h(4, z) - (16.0 * std::pow(z, 4) - 48.0 * z * z + 12.0)) < 1e-12);
}
