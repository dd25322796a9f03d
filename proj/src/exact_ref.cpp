#include "nhit/exact_ref.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nhit/errors.hpp"
#include "nhit/hitfn.hpp"
#include "nhit/specfun.hpp"

namespace nhit {

namespace {

constexpr double kPi = std::numbers::pi;

void check_inside(const Point& p, const char* who) {
  if (p.dim() != 3) throw DomainError(std::string(who) + ": points must be 3-dimensional");
  if (!(p.norm() < 1.0)) throw DomainError(std::string(who) + ": point outside the unit sphere");
}

}  // namespace

void SphereModeSumConfig::validate() const {
  if (l_max < 0) throw DomainError("SphereModeSumConfig: l_max must be >= 0");
  if (k_max < 1) throw DomainError("SphereModeSumConfig: k_max must be >= 1");
}

double sphere_exact(const Point& x, const Point& y, double T, const SphereModeSumConfig& cfg) {
  cfg.validate();
  check_inside(x, "sphere_exact");
  check_inside(y, "sphere_exact");
  if (!(T > 0.0)) return 0.0;
  const double rx = x.norm(), ry = y.norm();
  // The direction is irrelevant when either point sits at the center.
  const double cg = (rx > 0.0 && ry > 0.0) ? std::clamp(x.dot(y) / (rx * ry), -1.0, 1.0) : 1.0;
  double sum = 0.0;
  for (int l = 0; l <= cfg.l_max; ++l) {
    const double pl = legendre_p(l, cg);
    double part = 0.0;
    for (int k = 1; k <= cfg.k_max; ++k) {
      const double u = bessel_zero(l, k);
      const double jn = spherical_bessel_j(l + 1, u);
      part += spherical_bessel_j(l, rx * u) * spherical_bessel_j(l, ry * u) / (jn * jn) * std::exp(-u * u * T);
    }
    sum += (2.0 * l + 1.0) / (2.0 * kPi) * pl * part;
  }
  return sum;
}

double sphere_exact_subtracted(const Point& x, const Point& y, double T, const SphereModeSumConfig& cfg) {
  if (!(T > 0.0)) {
    cfg.validate();
    check_inside(x, "sphere_exact");
    check_inside(y, "sphere_exact");
    return 0.0;
  }
  return sphere_exact(x, y, T, cfg) - free_kernel(x, y, T, 3);
}

int sphere_k_max_for(double T, double rel_tail) {
  if (!(T > 0.0)) throw DomainError("sphere_k_max_for: T must be > 0");
  // l = 0 term k: (kπ)² e^{-(kπ)²T} / (2π) against (4πT)^{-3/2}.
  const double k0 = std::pow(4.0 * kPi * T, -1.5);
  int k = 8;
  while (k < 10000) {
    const double u = (k + 1) * kPi;
    if (u * u * std::exp(-u * u * T) / (2.0 * kPi) < rel_tail * k0) break;
    ++k;
  }
  return k;
}

double sphere_center_subtracted_images(double r, double T) {
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("sphere_center_subtracted_images: r must lie in [0, 1)");
  if (!(T > 0.0)) return 0.0;
  const double pref = std::pow(4.0 * kPi * T, -1.5);
  double sum = 0.0;
  for (int m = 1;; ++m) {
    double term;
    if (r == 0.0) {
      // limit of the (m, -m) pair divided by r
      term = 2.0 * (1.0 - 2.0 * m * m / T) * std::exp(-double(m) * m / T);
    } else {
      const double a = r + 2.0 * m, b = r - 2.0 * m;
      term = (a * std::exp(-a * a / (4.0 * T)) + b * std::exp(-b * b / (4.0 * T))) / r;
    }
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum) || m > 200) break;
  }
  return pref * sum;
}

double plane_exact(const Point& x, const Point& y, double T, const Plane& plane) {
  if (x.dim() != plane.normal.dim() || y.dim() != plane.normal.dim()) {
    throw DomainError("plane_exact: dimension mismatch");
  }
  if (!(T > 0.0)) return 0.0;
  const double sx = signed_distance(x, plane), sy = signed_distance(y, plane);
  if (!(sx * sy > 0.0)) return 0.0;
  const int D = static_cast<int>(x.dim());
  return free_kernel(x, y, T, D) - free_kernel(x, reflect_in_plane(y, plane), T, D);
}

}  // namespace nhit
