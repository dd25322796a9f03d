#include "nhit/hitfn.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <string>

#include "nhit/errors.hpp"
#include "nhit/quadrature.hpp"
#include "nhit/specfun.hpp"

namespace nhit {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

void check_deltas(std::span<const double> deltas) {
  if (deltas.empty()) throw DomainError("hit function: need at least one segment");
  for (double d : deltas) {
    if (!std::isfinite(d) || d < 0.0) throw DomainError("hit function: segment lengths must be finite and >= 0");
  }
}

double sum(std::span<const double> v) { return std::accumulate(v.begin(), v.end(), 0.0); }

void check_dim(const HitQuery& q, std::size_t D, const char* who) {
  if (q.path.dim() != D) {
    throw DomainError(std::string(who) + ": path has dimension " + std::to_string(q.path.dim()) +
                      ", expected " + std::to_string(D));
  }
}

}  // namespace

double free_kernel_r(double r, double tau, int D) {
  if (D < 1) throw DomainError("free_kernel: D must be >= 1");
  if (!(tau > 0.0)) return 0.0;
  return std::exp(-r * r / (4.0 * tau) - 0.5 * D * std::log(4.0 * kPi * tau));
}

double free_kernel(const Point& x, const Point& y, double tau, int D) {
  if (x.dim() != static_cast<std::size_t>(D) || y.dim() != static_cast<std::size_t>(D)) {
    throw DomainError("free_kernel: point dimension does not match D");
  }
  return free_kernel_r(distance(x, y), tau, D);
}

double hit_d1_total(int n, double Delta, double T) {
  if (n < 0) throw DomainError("hit_d1: order must be >= 0");
  if (!(Delta >= 0.0)) throw DomainError("hit_d1: total length must be >= 0");
  if (!(T > 0.0)) return 0.0;
  const double z = Delta / (2.0 * std::sqrt(T));
  return 0.25 * std::pow(T, 0.5 * (n - 1)) * inerfc(n - 1, z);
}

double hit_d1_rodrigues(int n, double Delta, double T) {
  if (n < 1) throw DomainError("hit_d1_rodrigues: order must be >= 1");
  if (!(T > 0.0)) return 0.0;
  const double z = Delta / (2.0 * std::sqrt(T));
  // Derivatives of y = erfcx: y' = 2zy - 2/sqrt(pi), y^(k+1) = 2z y^(k) + 2k y^(k-1).
  // Each step cancels roughly a factor 2z^2, so this route is for moderate z.
  double ykm1 = 0.0, yk = erfcx(z);
  for (int k = 0; k < n - 1; ++k) {
    const double next = (k == 0) ? 2.0 * z * yk - 2.0 * std::numbers::inv_sqrtpi
                                 : 2.0 * z * yk + 2.0 * k * ykm1;
    ykm1 = yk;
    yk = next;
  }
  const double sign = ((n - 1) % 2 == 0) ? 1.0 : -1.0;
  return 0.25 * sign * std::pow(T, 0.5 * (n - 1)) * std::exp(-z * z) * yk /
         (std::ldexp(1.0, n - 1) * std::tgamma(n));
}

double hit_d1_form(std::span<const double> deltas, double T) {
  check_deltas(deltas);
  return hit_d1_total(static_cast<int>(deltas.size()) - 1, sum(deltas), T);
}

double hit_d3_form(std::span<const double> deltas, double T) {
  check_deltas(deltas);
  const int n = static_cast<int>(deltas.size()) - 1;
  if (n == 0) return free_kernel_r(deltas[0], T, 3);
  double prod = 1.0;
  for (double d : deltas) {
    if (d == 0.0) throw SingularConfiguration("hit_d3: coincident consecutive points");
    prod *= d;
  }
  if (!(T > 0.0)) return 0.0;
  const double Delta = sum(deltas);
  const double log_pref = -0.5 * (2 * n + 3) * std::log(4.0 * kPi) - 1.5 * std::log(T);
  return std::exp(log_pref - Delta * Delta / (4.0 * T)) * Delta / prod;
}

double hit_d2_n1_form(std::span<const double> deltas, double T) {
  check_deltas(deltas);
  if (deltas.size() != 2) throw DomainError("hit_d2_n1: exactly one intermediate point required");
  const double a = deltas[0], b = deltas[1];
  if (a == 0.0 || b == 0.0) throw SingularConfiguration("hit_d2_n1: coincident consecutive points");
  if (!(T > 0.0)) return 0.0;
  const double x = a * b / (2.0 * T);
  const double e = std::exp(-(a * a + b * b) / (4.0 * T));
  if (e == 0.0) return 0.0;
  return bessel_k0(x) * e / (8.0 * kPi * kPi * T);
}

double hit_d1(const HitQuery& q) {
  check_dim(q, 1, "hit_d1");
  return hit_d1_form(segment_lengths(q.path), q.T);
}

double hit_d3(const HitQuery& q) {
  check_dim(q, 3, "hit_d3");
  return hit_d3_form(segment_lengths(q.path), q.T);
}

double hit_d2_n1(const HitQuery& q) {
  check_dim(q, 2, "hit_d2_n1");
  return hit_d2_n1_form(segment_lengths(q.path), q.T);
}

HitForm closed_form(int D) {
  switch (D) {
    case 1:
      return hit_d1_form;
    case 2:
      return [](std::span<const double> deltas, double T) {
        if (deltas.size() == 1) return free_kernel_r(deltas[0], T, 2);
        return hit_d2_n1_form(deltas, T);
      };
    case 3:
      return hit_d3_form;
    default:
      throw DomainError("closed_form: no closed form in D = " + std::to_string(D));
  }
}

double hit_closed(const HitQuery& q) {
  return closed_form(static_cast<int>(q.path.dim()))(segment_lengths(q.path), q.T);
}

// ---------------------------------------------------------------------------
// Momentum-contour representation
//
//   H = 2 C (1/2πi) ∫ dp p e^{-p²T} (-ip)^{-(n+1)ν} Π K_ν(-ipΔ_i),
//   C = (2π)^{-D(n+1)/2} (ΠΔ_i)^ν,  ν = (2-D)/2.
//
// Odd D: K_{|ν|} of half-integer order is elementary. Folding Δ_i^ν into each
// factor gives √(π/2) (-ip)^{-ν-1/2} Δ_i^{ν-1/2} e^{ipΔ_i} Σ_k a_k (-2ipΔ_i)^{-k},
// regular at Δ_i = 0 for D = 1. The contour Im p = c is placed at the saddle
// of e^{-p²T+ipΔ}, which removes the oscillation and keeps clear of the pole
// at p = 0 that appears for D = 1.
//
// Even D: no pole; integrate on the real axis with
// K_ν(-ix) = (πi/2) e^{iνπ/2} H^{(1)}_ν(x) and the reflection symmetry of the
// integrand, giving 2C/π ∫_0^∞ q e^{-Tq²} Im G(q) dq.
// ---------------------------------------------------------------------------

namespace {

BromwichResult bromwich_odd(std::span<const double> deltas, double T, int D, const BromwichConfig& cfg) {
  const int n = static_cast<int>(deltas.size()) - 1;
  const double nu = 0.5 * (2 - D);
  const int m = static_cast<int>(std::abs(nu) - 0.5);  // K_{m+1/2}
  std::vector<double> poly(m + 1);
  for (int k = 0; k <= m; ++k) poly[k] = std::tgamma(m + k + 1) / (std::tgamma(k + 1) * std::tgamma(m - k + 1));

  for (double d : deltas) {
    if (d == 0.0 && D != 1) throw SingularConfiguration("hit_bromwich: coincident consecutive points");
  }
  const double Delta = sum(deltas);
  const double c = std::max({Delta / (2.0 * T), 1.0 / std::sqrt(T), cfg.contour_shift});
  const double pref = 2.0 * std::pow(2.0 * kPi, -0.5 * D * (n + 1)) / (2.0 * kPi);

  auto f = [&](double s) -> cplx {
    const cplx p(s, c);
    const cplx mip = cplx(0.0, -1.0) * p;
    cplx g = p * std::exp(-p * p * T + cplx(0.0, 1.0) * p * Delta);
    const cplx alg = std::pow(mip, -nu - 0.5);
    for (double d : deltas) {
      cplx term = std::sqrt(kPi / 2.0) * alg * std::pow(d, nu - 0.5);
      if (m > 0) {
        const cplx inv = 1.0 / (2.0 * mip * d);
        cplx acc = 0.0, pw = 1.0;
        for (int k = 0; k <= m; ++k) {
          acc += poly[k] * pw;
          pw *= inv;
        }
        term *= acc;
      }
      g *= term;
    }
    return g;  // dp/(2πi) handled below
  };

  double S = cfg.p_max;
  if (!(S > 0.0)) S = std::sqrt(40.0 / T) + 2.0 * c;
  quad::Options opt;
  opt.rel_tol = cfg.rel_tol;
  opt.max_depth = static_cast<unsigned>(cfg.n_nodes);
  auto re = [&](double s) { return f(s).real(); };
  auto im = [&](double s) { return f(s).imag(); };
  const double int_re = quad::gk(re, -S, 0.0, opt) + quad::gk(re, 0.0, S, opt);
  const double int_im = quad::gk(im, -S, 0.0, opt) + quad::gk(im, 0.0, S, opt);
  // (1/i)(a + ib) = b - ia
  const double value = pref * int_im;
  const double imag = -pref * int_re;

  const double tail = std::abs(f(S)) + std::abs(f(-S));
  if (tail * pref > 1e-3 * cfg.rel_tol * std::max(std::abs(value), 1e-300)) {
    throw NumericalFailure("hit_bromwich: integrand not negligible at p_max");
  }
  return {value, imag};
}

BromwichResult bromwich_even(std::span<const double> deltas, double T, int D, const BromwichConfig& cfg) {
  const int n = static_cast<int>(deltas.size()) - 1;
  const int nu = (2 - D) / 2;
  const int order = std::abs(nu);
  for (double d : deltas) {
    if (d == 0.0) throw SingularConfiguration("hit_bromwich: coincident consecutive points");
  }
  double prod_nu = 1.0;
  for (double d : deltas) prod_nu *= std::pow(d, nu);
  const double C = std::pow(2.0 * kPi, -0.5 * D * (n + 1)) * prod_nu;
  const cplx phase_k = cplx(0.0, kPi / 2.0) * std::exp(cplx(0.0, order * kPi / 2.0));
  const cplx phase_p = std::exp(cplx(0.0, (n + 1) * nu * kPi / 2.0));

  auto f = [&](double q) {
    if (q == 0.0) return 0.0;
    cplx G = std::pow(q, -(n + 1) * nu) * phase_p;
    for (double d : deltas) {
      const double x = q * d;
      const cplx h1(std::cyl_bessel_j(double(order), x), std::cyl_neumann(double(order), x));
      G *= phase_k * h1;
    }
    return q * std::exp(-T * q * q) * G.imag();
  };
  double S = cfg.p_max;
  if (!(S > 0.0)) S = std::sqrt(40.0 / T);
  quad::Options opt;
  opt.rel_tol = cfg.rel_tol;
  opt.max_depth = static_cast<unsigned>(cfg.n_nodes);
  // log singularity of Y_0 at q = 0: double-exponential rule.
  const double I = quad::tanh_sinh(f, 0.0, S, opt);
  if (std::abs(f(S)) * S > 1e-3 * cfg.rel_tol * std::max(std::abs(I), 1e-300)) {
    throw NumericalFailure("hit_bromwich: integrand not negligible at p_max");
  }
  return {2.0 * C * I / kPi, 0.0};
}

}  // namespace

BromwichResult hit_bromwich_detail(std::span<const double> deltas, double T, int D, const BromwichConfig& cfg) {
  check_deltas(deltas);
  if (D < 1) throw DomainError("hit_bromwich: D must be >= 1");
  if (!(cfg.contour_shift > 0.0)) throw DomainError("hit_bromwich: contour_shift must be > 0");
  if (cfg.n_nodes < 1) throw DomainError("hit_bromwich: n_nodes must be >= 1");
  if (!(T > 0.0)) return {0.0, 0.0};
  return (D % 2 == 1) ? bromwich_odd(deltas, T, D, cfg) : bromwich_even(deltas, T, D, cfg);
}

double hit_bromwich(const HitQuery& q, int D, const BromwichConfig& cfg) {
  if (q.path.dim() != static_cast<std::size_t>(D)) throw DomainError("hit_bromwich: path dimension does not match D");
  const auto r = hit_bromwich_detail(segment_lengths(q.path), q.T, D, cfg);
  if (std::abs(r.imag) > 1e-8 * std::abs(r.value) + 1e-300) {
    throw NumericalFailure("hit_bromwich: contour integral has a non-negligible imaginary part");
  }
  return r.value;
}

}  // namespace nhit
