#include "nhit/hit_identities.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "nhit/errors.hpp"
#include "nhit/quadrature.hpp"

namespace nhit {

namespace {

constexpr double kPi = std::numbers::pi;

void check_size(std::span<const double> deltas, std::size_t want, const char* who) {
  if (deltas.size() != want) throw DomainError(std::string(who) + ": wrong number of segment lengths");
}

struct Stencil5 {
  // f at x-2h, x-h, x, x+h, x+2h
  double d1(const double f[5], double h) const { return (f[0] - 8.0 * f[1] + 8.0 * f[3] - f[4]) / (12.0 * h); }
  double d2(const double f[5], double h) const {
    return (-f[0] + 16.0 * f[1] - 30.0 * f[2] + 16.0 * f[3] - f[4]) / (12.0 * h * h);
  }
};

template <class F>
void sample5(F&& f, double x, double h, double out[5]) {
  for (int k = -2; k <= 2; ++k) out[k + 2] = f(x + k * h);
}

}  // namespace

HitForm raise_dimension(HitForm h, int n, DimensionShiftConfig cfg) {
  if (n < 0) throw DomainError("raise_dimension: order must be >= 0");
  const std::size_t m = static_cast<std::size_t>(n) + 1;
  // Two Richardson levels leave an O(h^6) truncation error against roundoff
  // ~ eps / h^m, hence the exponent.
  const double kappa = cfg.rel_step > 0.0
                           ? cfg.rel_step
                           : 1.5 * std::pow(std::numeric_limits<double>::epsilon(), 1.0 / (m + 6.0));
  return [h = std::move(h), m, kappa](std::span<const double> deltas, double T) {
    check_size(deltas, m, "raise_dimension");
    if (!(T > 0.0)) return 0.0;
    std::vector<double> step(m), args(m);
    for (std::size_t i = 0; i < m; ++i) {
      if (!(deltas[i] > 0.0)) throw SingularConfiguration("raise_dimension: Δ_i must be > 0");
      step[i] = kappa * std::min(std::sqrt(T), 2.0 * deltas[i]);
    }
    // Tensor-product central difference for ∂^m / ∂Δ_1 ... ∂Δ_m.
    auto mixed = [&](double scale) {
      double acc = 0.0, denom = 1.0;
      for (std::size_t i = 0; i < m; ++i) denom *= 2.0 * scale * step[i];
      for (unsigned mask = 0; mask < (1u << m); ++mask) {
        double sign = 1.0;
        for (std::size_t i = 0; i < m; ++i) {
          const bool plus = (mask >> i) & 1u;
          args[i] = deltas[i] + (plus ? 1.0 : -1.0) * scale * step[i];
          if (!plus) sign = -sign;
        }
        acc += sign * h(args, T);
      }
      return acc / denom;
    };
    const double d1 = mixed(1.0), d2 = mixed(0.5), d4 = mixed(0.25);
    const double r1 = (4.0 * d2 - d1) / 3.0, r2 = (4.0 * d4 - d2) / 3.0;
    const double d = (16.0 * r2 - r1) / 15.0;
    double pref = 1.0;
    for (std::size_t i = 0; i < m; ++i) pref *= -1.0 / (2.0 * kPi * deltas[i]);
    return pref * d;
  };
}

HitForm lower_dimension(HitForm h, int n, DimensionShiftConfig cfg) {
  if (n < 0) throw DomainError("lower_dimension: order must be >= 0");
  const std::size_t m = static_cast<std::size_t>(n) + 1;
  return [h = std::move(h), m, cfg](std::span<const double> deltas, double T) {
    check_size(deltas, m, "lower_dimension");
    if (!(T > 0.0)) return 0.0;
    std::vector<double> args(deltas.begin(), deltas.end());
    quad::Options opt;
    opt.rel_tol = cfg.rel_tol;
    const double L = cfg.tail * std::sqrt(T);
    std::function<double(std::size_t)> level = [&](std::size_t i) -> double {
      if (i == m) return h(args, T);
      auto f = [&, i](double d) {
        args[i] = d;
        return 2.0 * kPi * d * level(i + 1);
      };
      return quad::gk(f, deltas[i], deltas[i] + L, opt);
    };
    return level(0);
  };
}

namespace {
// Absolute tolerance shared by nested raise_order convolutions; < 0 outside one.
thread_local double t_abs_floor = -1.0;
// Nesting depth of the running convolution; inner levels are tightened
// tenfold per level so their noise stays below the outer tolerance.
thread_local int t_depth = 0;
}  // namespace

HitForm raise_order(HitForm h_prev, int D, double rel_tol) {
  if (D < 1) throw DomainError("raise_order: D must be >= 1");
  return [h_prev = std::move(h_prev), D, rel_tol](std::span<const double> deltas, double T) {
    if (deltas.size() < 2) throw DomainError("raise_order: order-n form needs n+1 >= 2 segment lengths");
    if (!(T > 0.0)) return 0.0;
    const std::span<const double> head = deltas.first(deltas.size() - 1);
    const double last = deltas.back();
    auto f = [&](double tau) { return h_prev(head, tau) * free_kernel_r(last, T - tau, D); };
    auto integrate = [&](double rel, double abs) {
      quad::Options opt;
      opt.rel_tol = std::max(rel * std::pow(0.1, t_depth), 1e-11);
      ++t_depth;
      struct Leave {
        ~Leave() { --t_depth; }
      } leave;
      opt.abs_tol = abs;
      return quad::tanh_sinh(f, 0.0, T, opt);
    };
    if (t_abs_floor >= 0.0) return integrate(rel_tol, t_abs_floor);
    // Outermost convolution: nested inner ones evaluated near τ = 0 are
    // exponentially small and cannot meet a relative tolerance. A coarse pilot
    // pass fixes the overall scale and hence an absolute floor for all levels.
    struct Restore {
      ~Restore() { t_abs_floor = -1.0; }
    } restore;
    t_abs_floor = std::numeric_limits<double>::infinity();
    const double scale = std::abs(integrate(1e-4, t_abs_floor));
    t_abs_floor = 1e-3 * rel_tol * scale;
    return integrate(rel_tol, t_abs_floor);
  };
}

double raise_order(const HitForm& h_prev, const HitQuery& q, int D, double rel_tol) {
  if (q.path.order() < 1) throw DomainError("raise_order: query must have an intermediate point to insert");
  if (q.path.dim() != static_cast<std::size_t>(D)) throw DomainError("raise_order: dimension mismatch");
  return raise_order(h_prev, D, rel_tol)(segment_lengths(q.path), q.T);
}

double integrate_last_point(const HitForm& h_n, std::span<const double> deltas_prev, double T, int D,
                            double rel_tol) {
  if (deltas_prev.empty()) throw DomainError("lower_order: need at least one segment length");
  const double rho = deltas_prev.back();
  if (!(rho > 0.0)) throw SingularConfiguration("lower_order: y must differ from z_{n-1}");
  std::vector<double> args(deltas_prev.begin(), deltas_prev.end());
  args.push_back(0.0);
  const std::size_t i1 = args.size() - 2, i2 = args.size() - 1;
  auto h = [&](double r1, double r2) {
    if (!std::isfinite(r1) || !std::isfinite(r2)) return 0.0;
    args[i1] = r1;
    args[i2] = r2;
    return h_n(args, T);
  };
  quad::Options opt;
  opt.rel_tol = rel_tol;

  switch (D) {
    case 1: {
      // z on the line through the foci 0 and ρ: left of, between, right of.
      auto outer = [&](double t) { return h(t, rho + t) + h(rho + t, t); };
      auto inner = [&](double z) { return h(z, rho - z); };
      return quad::exp_sinh(outer, 0.0, opt) + quad::gk(inner, 0.0, rho, opt);
    }
    case 2: {
      // Elliptic coordinates, foci at distance 2a = ρ.
      const double a = 0.5 * rho;
      auto over_mu = [&](double mu) {
        const double ch = std::cosh(mu), sh = std::sinh(mu);
        if (!std::isfinite(ch)) return 0.0;
        auto over_nu = [&](double nu) {
          const double cn = std::cos(nu), sn = std::sin(nu);
          const double jac = a * a * (sh * sh + sn * sn);
          const double v = jac * h(a * (ch + cn), a * (ch - cn));
          return std::isfinite(v) ? v : 0.0;
        };
        return 2.0 * quad::gk(over_nu, 0.0, kPi, opt);
      };
      return quad::exp_sinh(over_mu, 0.0, opt);
    }
    case 3: {
      // Prolate spheroidal coordinates with u = cosh μ, v = cos ν:
      // d³z = a r1 r2 du dv dφ, which cancels the 1/(r1 r2) of the D = 3 form.
      const double a = 0.5 * rho;
      auto over_u = [&](double u) {
        auto over_v = [&](double v) {
          const double r1 = a * (u + v), r2 = a * (u - v);
          const double val = r1 * r2 * h(r1, r2);
          return std::isfinite(val) ? val : 0.0;
        };
        return quad::gk(over_v, -1.0, 1.0, opt);
      };
      return 2.0 * kPi * a * quad::exp_sinh(over_u, 1.0, opt);
    }
    default:
      throw DomainError("lower_order: supported for D = 1, 2, 3");
  }
}

double lower_order(const HitForm& h_n, std::span<const double> deltas_prev, double T, int D,
                   const LowerOrderConfig& cfg) {
  if (!(T > 0.0)) return 0.0;
  if (!(cfg.rel_step > 0.0 && cfg.rel_step < 0.25)) throw DomainError("lower_order: rel_step must be in (0, 0.25)");
  const double rho = deltas_prev.back();
  std::vector<double> prev(deltas_prev.begin(), deltas_prev.end());
  auto G = [&](double r, double t) {
    prev.back() = r;
    return integrate_last_point(h_n, prev, t, D, cfg.rel_tol);
  };
  const double hr = cfg.rel_step * std::min(rho, std::sqrt(T));
  const double ht = cfg.rel_step * T;
  double fr[5], ft[5];
  sample5([&](double r) { return G(r, T); }, rho, hr, fr);
  for (int k = -2; k <= 2; ++k) ft[k + 2] = (k == 0) ? fr[2] : G(rho, T + k * ht);
  const Stencil5 s;
  const double lap = s.d2(fr, hr) + (D - 1) * s.d1(fr, hr) / rho;
  return cfg.c * (s.d1(ft, ht) - lap);
}

double green_residual(const HitForm& h, std::span<const double> deltas, double T, int D, double rel_step) {
  if (deltas.empty()) throw DomainError("green_residual: need segment lengths");
  if (!(T > 0.0)) throw DomainError("green_residual: T must be > 0");
  std::vector<double> args(deltas.begin(), deltas.end());
  const double r = args.back();
  if (!(r > 0.0)) throw SingularConfiguration("green_residual: y on the support z_n");
  const double hr = rel_step * std::min(r, std::sqrt(T));
  const double ht = rel_step * T;
  double fr[5], ft[5];
  sample5(
      [&](double x) {
        args.back() = x;
        return h(args, T);
      },
      r, hr, fr);
  args.back() = r;
  sample5([&](double t) { return h(args, t); }, T, ht, ft);
  const Stencil5 s;
  return s.d1(ft, ht) - s.d2(fr, hr) - (D - 1) * s.d1(fr, hr) / r;
}

D1Form d1_form(int n) {
  if (n < 0) throw DomainError("d1_form: order must be >= 0");
  return [n](double Delta, double T) { return hit_d1_total(n, Delta, T); };
}

D1Form d1_order_step(StepDirection dir, D1Form h, double rel_tol) {
  if (dir == StepDirection::up) {
    return [h = std::move(h), rel_tol](double Delta, double T) {
      if (!(T > 0.0)) return 0.0;
      quad::Options opt;
      opt.rel_tol = rel_tol;
      return 0.5 * quad::exp_sinh([&](double d) { return h(d, T); }, Delta, opt);
    };
  }
  return [h = std::move(h)](double Delta, double T) {
    if (!(T > 0.0)) return 0.0;
    const double step = 2e-3 * std::sqrt(T);
    auto f = [&](double d) { return h(d, T); };
    if (Delta - 2.0 * step >= 0.0) {
      double v[5];
      sample5(f, Delta, step, v);
      return -2.0 * Stencil5{}.d1(v, step);
    }
    // One-sided fourth-order stencil next to Δ = 0.
    const double d = (-25.0 * f(Delta) + 48.0 * f(Delta + step) - 36.0 * f(Delta + 2 * step) +
                      16.0 * f(Delta + 3 * step) - 3.0 * f(Delta + 4 * step)) /
                     (12.0 * step);
    return -2.0 * d;
  };
}

}  // namespace nhit
