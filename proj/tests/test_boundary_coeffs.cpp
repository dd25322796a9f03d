#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nhit/boundary_coeffs.hpp"
#include "nhit/errors.hpp"
#include "nhit/hitfn.hpp"
#include "nhit/quadrature.hpp"

using namespace nhit;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

double binomial(int n, int k) { return std::tgamma(n + 1.0) / (std::tgamma(k + 1.0) * std::tgamma(n - k + 1.0)); }

/// Density of a sum of k independent U(0,1) variables.
double irwin_hall(int k, double s) {
  if (s < 0.0 || s > k) return 0.0;
  if (k == 1) return 1.0;
  double sum = 0.0;
  for (int j = 0; j <= static_cast<int>(std::floor(s)); ++j) {
    sum += ((j % 2) ? -1.0 : 1.0) * binomial(k, j) * std::pow(s - j, k - 1);
  }
  return sum / std::tgamma(static_cast<double>(k));
}

/// Unit sphere, x = y = center: the integrand depends on Σ sin(θ_i/2) only.
double sphere_center_oracle(int n, double T) {
  const double pref = std::pow(4.0 * kPi * T, -1.5);
  auto g = [T](double s) {
    const double D = 2.0 + 2.0 * s;
    return D * std::exp(-D * D / (4.0 * T));
  };
  if (n == 0) return pref * g(0.0);
  quad::Options o;
  o.rel_tol = 1e-12;
  double total = 0.0;
  for (int j = 0; j < n; ++j) {  // split at the density's kinks
    total += quad::gk([&](double s) { return irwin_hall(n, s) * g(s); }, j, j + 1.0, o);
  }
  return pref * total;
}

/// Direct surface integrals of the D = 3 hit function in polar angles.
double sphere_angle_oracle(int n, double r, double T) {
  const Point x{0.0, 0.0, 0.0}, y{0.0, 0.0, r};
  quad::Options o;
  o.rel_tol = 1e-10;
  auto on_sphere = [](double theta, double phi) {
    return Point{std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
  };
  if (n == 0) {
    return 2.0 * kPi * quad::gk(
                           [&](double th) {
                             return std::sin(th) * hit_d3({PolygonalPath(x, {on_sphere(th, 0.0)}, y), T});
                           },
                           0.0, kPi, o);
  }
  // n = 1: z_2 at polar angle θ, z_1 anywhere (only |z_1 - z_2| matters).
  return 2.0 * kPi * quad::gk(
                         [&](double th) {
                           const Point z2 = on_sphere(th, 0.0);
                           const double y2 = distance(z2, y);
                           const double inner = 2.0 * kPi * quad::gk(
                                                                [&](double a) {
                                                                  const double d12 = 2.0 * std::sin(0.5 * a);
                                                                  const std::vector<double> d{1.0, d12, y2};
                                                                  return std::sin(a) * hit_d3_form(d, T);
                                                                },
                                                                0.0, kPi, o);
                           return std::sin(th) * inner;
                         },
                         0.0, kPi, o);
}

/// Half space, x = y at height d: unsigned c_n = T^{n/2} i^n erfc(d/√T) / (16πT).
double plane_exact_coefficient(int n, double d, double T) {
  double a = 2.0 / std::sqrt(kPi) * std::exp(-d * d / T), b = std::erfc(d / std::sqrt(T));
  const double z = d / std::sqrt(T);
  for (int k = 1; k <= n; ++k) {
    const double next = (a - 2.0 * z * b) / (2.0 * k);
    a = b;
    b = next;
  }
  return std::pow(T, 0.5 * n) * b / (16.0 * kPi * T);
}

}  // namespace

TEST_CASE("sphere coefficients with both points at the center") {
  QuadratureConfig q;
  q.rel_tol = 1e-10;
  for (double T : {0.02, 0.1, 0.5, 1.0, 2.5}) {
    const double pref = std::pow(4.0 * kPi * T, -1.5);
    CHECK(sphere_c0(SphereCase{0.0, T}, q) == Approx(2.0 * pref * std::exp(-1.0 / T)).epsilon(1e-10));
    CHECK(sphere_cn(SphereCase{0.0, T}, 1, q) ==
          Approx(pref * T * (std::exp(-1.0 / T) - std::exp(-4.0 / T))).epsilon(1e-10));
    for (int n = 2; n <= 3; ++n) {
      CHECK(sphere_cn(SphereCase{0.0, T}, n, q) == Approx(sphere_center_oracle(n, T)).epsilon(1e-8));
    }
  }
}

TEST_CASE("sphere coefficients off the center") {
  QuadratureConfig q;
  q.rel_tol = 1e-10;
  for (double r : {0.3, 0.7}) {
    for (double T : {0.1, 1.0}) {
      CHECK(sphere_cn(SphereCase{r, T}, 0, q) == Approx(sphere_angle_oracle(0, r, T)).epsilon(1e-8));
      CHECK(sphere_cn(SphereCase{r, T}, 1, q) == Approx(sphere_angle_oracle(1, r, T)).epsilon(1e-7));
    }
  }
  CHECK(sphere_cn(SphereCase{0.5, 0.0}, 2) == 0.0);
  CHECK_THROWS_AS(sphere_cn(SphereCase{1.0, 1.0}, 0), DomainError);
  CHECK_THROWS_AS(sphere_cn(SphereCase{0.0, 1.0}, 4), DomainError);
}

TEST_CASE("plane coefficients against the image construction") {
  for (double T : {0.1, 1.0, 6.0}) {
    CHECK(plane_c0(PlaneCase{1.0, T}) == Approx(std::erfc(1.0 / std::sqrt(T)) / (16.0 * kPi * T)).epsilon(1e-14));
    CHECK(plane_c0(PlaneCase{1.0, T}) == Approx(plane_exact_coefficient(0, 1.0, T)).epsilon(1e-13));
  }
  QuadratureConfig q;
  q.cutoff_check = false;
  SUBCASE("first order, adaptive") {
    for (double T : {0.1, 1.0, 6.0}) {
      const CoefficientValue v = plane_cn_detail(PlaneCase{1.0, T}, 1, q);
      CHECK(v.method == CubatureMethod::adaptive);
      CHECK(v.value == Approx(plane_exact_coefficient(1, 1.0, T)).epsilon(1e-7));
    }
  }
  SUBCASE("higher orders, quasi-Monte Carlo") {
    q.qmc_points = 1L << 17;
    for (int n = 2; n <= 3; ++n) {
      for (double T : {0.3, 3.0}) {
        const CoefficientValue v = plane_cn_detail(PlaneCase{0.8, T}, n, q);
        CHECK(v.method == CubatureMethod::quasi_monte_carlo);
        const double want = plane_exact_coefficient(n, 0.8, T);
        CHECK(std::abs(v.value - want) < 6.0 * v.error + 2e-4 * want);
        CHECK(v.error < 1e-3 * want);
      }
    }
  }
}

TEST_CASE("plane cutoff check and reproducibility") {
  QuadratureConfig q;
  q.qmc_points = 1L << 15;
  const CoefficientValue a = plane_cn_detail(PlaneCase{1.0, 1.0}, 2, q);
  CHECK(a.cutoff_shift < 1e-3);
  CHECK(a.rho_max == 10.0);
  const CoefficientValue b = plane_cn_detail(PlaneCase{1.0, 1.0}, 2, q);
  CHECK(a.value == b.value);
  q.seed = 7;
  CHECK(plane_cn_detail(PlaneCase{1.0, 1.0}, 2, q).value != a.value);
  // a cutoff inside the bulk of the integrand is caught
  QuadratureConfig tiny;
  tiny.rho_max = 0.3;
  CHECK_THROWS_AS(plane_cn_detail(PlaneCase{1.0, 3.0}, 1, tiny), NumericalFailure);
}

TEST_CASE("scattering signs") {
  QuadratureConfig q;
  q.qmc_points = 1L << 14;
  q.cutoff_check = false;
  const CoefficientReport s = coefficient_report(SphereCase{0.0, 0.5}, 3, q);
  const CoefficientReport p = coefficient_report(PlaneCase{1.0, 0.5}, 3, q);
  for (const auto* rep : {&s, &p}) {
    REQUIRE(rep->series.values.size() == 4);
    for (int n = 0; n < 4; ++n) {
      const double sign = (n % 2 == 0) ? -1.0 : 1.0;
      CHECK(rep->series.values[n] == sign * rep->details[n].value);
    }
  }
  const CoefficientSeries z = coefficient_series(SphereCase{0.0, 0.0}, 3);
  for (double v : z.values) CHECK(!std::signbit(v));
}
