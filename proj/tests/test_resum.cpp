#include <doctest.h>

#include <cmath>
#include <random>

#include "nhit/errors.hpp"
#include "nhit/resum.hpp"

using namespace nhit;
using doctest::Approx;

namespace {

/// Taylor coefficients of num(x)/den(x), den[0] = 1, by long division.
std::vector<double> series_of(const std::vector<double>& num, const std::vector<double>& den, int len) {
  std::vector<double> c(len, 0.0);
  for (int k = 0; k < len; ++k) {
    double s = k < static_cast<int>(num.size()) ? num[k] : 0.0;
    for (int j = 1; j <= k && j < static_cast<int>(den.size()); ++j) s -= den[j] * c[k - j];
    c[k] = s;
  }
  return c;
}

double poly(const std::vector<double>& p, double x) {
  double s = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) s = s * x + *it;
  return s;
}

}  // namespace

TEST_CASE("Shanks transform is exact on geometric sequences") {
  for (double q : {0.5, -0.7, 0.93, 2.0}) {
    std::vector<double> a;
    for (int k = 0; k < 6; ++k) a.push_back(3.0 - 1.7 * std::pow(q, k));
    for (double s : shanks(a)) CHECK(s == Approx(3.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(shanks(std::vector<double>{1.0, 2.0, 3.0}), DegenerateApproximant);
  CHECK_THROWS_AS(shanks(std::vector<double>{1.0, 2.0}), DomainError);
}

TEST_CASE("S1 and S2 from three approximants") {
  const double p11 = -0.9, p22 = -1.15, p33 = -1.08;
  const ShanksPair s = shanks_s1_s2(p11, p22, p33);
  CHECK(s.s1 == Approx((p11 * p33 - p22 * p22) / (p11 + p33 - 2.0 * p22)).epsilon(1e-14));
  CHECK(s.s2 == Approx((s.s1 * p11 - p22 * p22) / (s.s1 + p11 - 2.0 * p22)).epsilon(1e-14));
  // homogeneous of degree one, unlike the literal variant
  const ShanksPair t = shanks_s1_s2(1e-3 * p11, 1e-3 * p22, 1e-3 * p33);
  CHECK(t.s2 == Approx(1e-3 * s.s2).epsilon(1e-12));
  CHECK(shanks_s2_literal(s.s1, p11, p22) == Approx((s.s1 + p11 - p22 * p22) / (s.s1 + p11 - 2.0 * p22)));
  CHECK(leibniz_error(s.s1, s.s2) == Approx(std::abs(s.s2 - s.s1) / std::abs(s.s2)));
  CHECK_THROWS_AS(leibniz_error(1.0, 0.0), DegenerateApproximant);
}

TEST_CASE("Padé approximants reproduce rational functions") {
  const std::vector<double> num{1.0, 2.0, -0.5}, den{1.0, -0.4, 0.3};
  const CoefficientSeries c{series_of(num, den, 9)};
  for (double x : {-0.8, 0.1, 0.6, 3.0}) {
    const double f = poly(num, x) / poly(den, x);
    CHECK(pade(2, 2, c, x) == Approx(f).epsilon(1e-12));
    CHECK(pade_determinant(2, 2, c, x) == Approx(f).epsilon(1e-11));
  }
  // higher orders of an exact [2/2] rational have a singular system
  CHECK_THROWS_AS(pade(3, 3, CoefficientSeries{series_of(num, den, 7)}, 0.5), DegenerateApproximant);
  // [2/2] of e^x at x = 1 is 19/7
  const CoefficientSeries e{{1.0, 1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0}};
  CHECK(pade(2, 2, e, 1.0) == Approx(19.0 / 7.0).epsilon(1e-14));
  CHECK(pade_determinant(2, 2, e, 1.0) == Approx(19.0 / 7.0).epsilon(1e-14));
  // [L/0] is the partial sum
  CHECK(pade(4, 0, e, 1.0) == Approx(1.0 + 1.0 + 0.5 + 1.0 / 6.0 + 1.0 / 24.0));
  CHECK_THROWS_AS(pade(2, 2, CoefficientSeries{{1.0, 2.0}}, 1.0), DomainError);
}

TEST_CASE("strong-coupling limit of diagonal approximants") {
  // λ(a0 + a1 λ)/(1 + b1 λ + b2 λ²) -> a1/b2
  const std::vector<double> a{0.7, -1.3}, b{1.0, 2.1, 0.9};
  const CoefficientSeries c{series_of(a, b, 6)};
  CHECK(diagonal_pade_strong_coupling(c, 2) == Approx(a[1] / b[2]).epsilon(1e-12));
  CHECK(diagonal_pade_strong_coupling_determinant(c, 2) == Approx(a[1] / b[2]).epsilon(1e-12));
  // λ a/(1 + bλ) -> a/b at N = 1
  const CoefficientSeries g{series_of({2.0}, {1.0, 4.0}, 4)};
  CHECK(diagonal_pade_strong_coupling(g, 1) == Approx(0.5).epsilon(1e-14));

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> v(6);
    for (auto& x : v) x = u(rng);
    const CoefficientSeries full{v};
    for (int N = 1; N <= 2; ++N) {
      CHECK(diagonal_pade_strong_coupling(full, N) ==
            Approx(diagonal_pade_strong_coupling_determinant(full, N)).epsilon(1e-10));
    }
    CHECK(diagonal_pade_strong_coupling(full, 3) ==
          Approx(diagonal_pade_strong_coupling_determinant(full, 3)).epsilon(1e-10));
    // four coefficients: explicit N = 3 formula, higher ones zero
    const CoefficientSeries four{{v[0], v[1], v[2], v[3]}};
    const double c0 = v[0], c1 = v[1], c2 = v[2], c3 = v[3];
    const double p11 = -c0 * c0 / c1;
    const double p22 = (c1 * c1 * c1 + c0 * c0 * c3 - 2.0 * c0 * c1 * c2) / (c2 * c2 - c1 * c3);
    const double p33 =
        -(std::pow(c2, 4) - 3.0 * c1 * c2 * c2 * c3 + c1 * c1 * c3 * c3 + 2.0 * c0 * c2 * c3 * c3) / std::pow(c3, 3);
    CHECK(diagonal_pade_strong_coupling(four, 1) == Approx(p11).epsilon(1e-10));
    CHECK(diagonal_pade_strong_coupling(four, 2) == Approx(p22).epsilon(1e-10));
    CHECK(diagonal_pade_strong_coupling(four, 3) == Approx(p33).epsilon(1e-10));
    CHECK(diagonal_pade_strong_coupling_determinant(four, 3) == Approx(p33).epsilon(1e-10));
  }
  CHECK_THROWS_AS(diagonal_pade_strong_coupling(CoefficientSeries{{1.0, 0.0}}, 1), DegenerateApproximant);
  CHECK_THROWS_AS(diagonal_pade_strong_coupling(CoefficientSeries{{1.0}}, 1), DomainError);
  CHECK_THROWS_AS(
      diagonal_pade_strong_coupling(CoefficientSeries{{1.0, 1.0}, SeriesConvention::general_potential}, 1),
      DomainError);
}

TEST_CASE("general-potential approximant at unit coupling") {
  for (double q : {0.3, -0.6, 1.7}) {
    std::vector<double> C;
    for (int p = 0; p < 3; ++p) C.push_back(0.4 * std::pow(q, p));
    const CoefficientSeries s{C, SeriesConvention::general_potential};
    CHECK(kv_pade(s, 1) == Approx(0.4 / (1.0 - q)).epsilon(1e-12));
    CHECK(kv_pade(s, 0) == Approx(0.4));
  }
  const std::vector<double> num{1.0, 2.0, -0.5}, den{1.0, -0.4, 0.3};
  const CoefficientSeries r{series_of(num, den, 5), SeriesConvention::general_potential};
  CHECK(kv_pade(r, 2) == Approx(poly(num, 1.0) / poly(den, 1.0)).epsilon(1e-11));
  CHECK(kv_pade(r, 2) == Approx(pade(2, 2, CoefficientSeries{r.values}, 1.0)).epsilon(1e-11));
  CHECK_THROWS_AS(kv_pade(CoefficientSeries{{1.0, 0.5, 0.25}}, 1), DomainError);
}

TEST_CASE("resummation leaves degenerate columns empty") {
  const CoefficientSeries ok{{-0.2, 0.1, -0.06, 0.04}};
  const ResummationResult r = resum(1.0, ok, -0.15);
  REQUIRE(r.p11);
  REQUIRE(r.p22);
  REQUIRE(r.p33);
  REQUIRE(r.s1);
  REQUIRE(r.s2);
  CHECK(*r.p11 == Approx(-0.4));
  CHECK(*r.eps == Approx(std::abs(*r.s2 - *r.s1) / std::abs(*r.s2)));
  CHECK(*r.exact == -0.15);

  const ResummationResult bad = resum(1.0, CoefficientSeries{{-0.2, 0.0, 0.0, 0.0}});
  CHECK_FALSE(bad.p11);
  CHECK_FALSE(bad.s1);
  CHECK_FALSE(bad.s2);
  CHECK_FALSE(bad.eps);
}
