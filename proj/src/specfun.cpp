#include "nhit/specfun.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "nhit/errors.hpp"

namespace nhit {

namespace {

constexpr double kTwoOverSqrtPi = 2.0 * std::numbers::inv_sqrtpi;

// Lentz evaluation of the Laplace continued fraction
//   sqrt(pi) erfcx(z) = 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + ...)))),
// accurate for z >= 2.
double erfcx_cf(double z) {
  const double tiny = 1e-300;
  double f = z, c = z, d = 0.0;
  for (int k = 1; k < 2000; ++k) {
    const double a = 0.5 * k;
    d = z + a * d;
    if (std::abs(d) < tiny) d = tiny;
    c = z + a / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::numbers::inv_sqrtpi / f;
}

}  // namespace

double erfc(double z) { return std::erfc(z); }

double erfcx(double z) {
  if (z >= 3.0) return erfcx_cf(z);
  return std::exp(z * z) * std::erfc(z);
}

double inerfc_scaled(int n, double z) {
  if (n < -1) throw DomainError("inerfc: order must be >= -1");
  if (!std::isfinite(z)) throw DomainError("inerfc: non-finite argument");
  if (n == -1) return kTwoOverSqrtPi;
  if (n == 0) return erfcx(z);

  if (z <= 0.5) {
    // i^n erfc(-|z|) is the dominant solution of the recurrence; upward is stable
    // there and loses at most a few digits on (0, 0.5] for moderate n.
    double ym2 = kTwoOverSqrtPi, ym1 = erfcx(z);
    for (int k = 1; k <= n; ++k) {
      const double y = (ym2 - 2.0 * z * ym1) / (2.0 * k);
      ym2 = ym1;
      ym1 = y;
    }
    return ym1;
  }

  // Miller's algorithm: for z > 0 the wanted solution is minimal, so run the
  // recurrence 2k y_k + 2z y_{k-1} - y_{k-2} = 0 downwards from an arbitrary
  // start and normalise against i^{-1}erfc.
  const double reach = 20.0 / z;
  const int start = n + static_cast<int>(std::max(30.0, 0.5 * reach * reach)) + 2;
  double yk1 = 0.0, yk = 1e-30, yn = 0.0;
  for (int k = start; k >= 1; --k) {
    const double ykm2 = 2.0 * k * yk1 + 2.0 * z * yk;  // this is y_{k-2} with yk = y_{k-1}
    yk1 = yk;
    yk = ykm2;
    if (k - 2 == n) yn = yk;
    if (std::abs(yk) > 1e250) {
      yk *= 1e-250;
      yk1 *= 1e-250;
      yn *= 1e-250;
    }
  }
  // yk now holds y_{-1}.
  return yn * kTwoOverSqrtPi / yk;
}

double inerfc(int n, double z) {
  if (n < -1) throw DomainError("inerfc: order must be >= -1");
  if (z <= 0.5) return std::exp(-z * z) * inerfc_scaled(n, z);
  const double e = std::exp(-z * z);
  if (e == 0.0) return 0.0;
  return e * inerfc_scaled(n, z);
}

double bessel_k0(double x) {
  if (!(x > 0.0)) throw DomainError("bessel_k0: argument must be > 0");
  if (x > 700.0) return 0.0;
  return std::cyl_bessel_k(0.0, x);
}

double spherical_bessel_j(int l, double x) {
  if (l < 0) throw DomainError("spherical_bessel_j: order must be >= 0");
  const double v = std::sph_bessel(static_cast<unsigned>(l), std::abs(x));
  return (x < 0.0 && (l % 2 == 1)) ? -v : v;
}

BesselZeroTable::BesselZeroTable(int l_max, int k_max) { build(l_max, k_max); }

void BesselZeroTable::build(int l_max, int k_max) {
  if (l_max < 0 || k_max < 1) throw DomainError("BesselZeroTable: need l_max >= 0, k_max >= 1");
  for (int l = 0; l <= l_max; ++l)
    for (int k = 1; k <= k_max; ++k) at(l, k);
}

double BesselZeroTable::operator()(int l, int k) const {
  auto it = entries_.find({l, k});
  if (it == entries_.end()) throw DomainError("BesselZeroTable: entry not built");
  return it->second;
}

double BesselZeroTable::at(int l, int k) {
  if (l < 0 || k < 1) throw DomainError("bessel_zero: need l >= 0, k >= 1");
  auto it = entries_.find({l, k});
  if (it != entries_.end()) return it->second;
  const double u = compute(l, k);
  entries_.emplace(std::make_pair(l, k), u);
  return u;
}

double BesselZeroTable::compute(int l, int k) {
  if (l == 0) return k * std::numbers::pi;
  // Zeros of j_l interlace with those of j_{l-1}.
  const double lo = at(l - 1, k);
  const double hi = at(l - 1, k + 1);
  auto f = [l](double x) { return spherical_bessel_j(l, x); };
  if (f(lo) * f(hi) > 0.0) throw NumericalFailure("bessel_zero: interlacing bracket does not straddle a root");
  auto tol = [](double a, double b) { return std::abs(b - a) < 1e-12; };
  try {
    auto [a, b] = boost::math::tools::bisect(f, lo, hi, tol);
    return 0.5 * (a + b);
  } catch (const std::exception& e) {
    throw NumericalFailure(std::string("bessel_zero: ") + e.what());
  }
}

double bessel_zero(int l, int k) {
  static BesselZeroTable table;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  return table.at(l, k);
}

double legendre_p(int l, double x) {
  if (l < 0) throw DomainError("legendre_p: degree must be >= 0");
  if (!(std::abs(x) <= 1.0)) throw DomainError("legendre_p: |x| must be <= 1");
  return std::legendre(static_cast<unsigned>(l), x);
}

std::complex<double> hermite_h(int n, std::complex<double> z) {
  if (n < 0) throw DomainError("hermite_h: degree must be >= 0");
  std::complex<double> hm1(1.0, 0.0);
  if (n == 0) return hm1;
  std::complex<double> h = 2.0 * z;
  for (int k = 1; k < n; ++k) {
    const std::complex<double> next = 2.0 * z * h - 2.0 * static_cast<double>(k) * hm1;
    hm1 = h;
    h = next;
  }
  return h;
}

}  // namespace nhit
