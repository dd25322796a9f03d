#include "nhit/boundary_coeffs.hpp"

#include <boost/random/sobol.hpp>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <type_traits>

#include "nhit/errors.hpp"
#include "nhit/quadrature.hpp"
#include "nhit/specfun.hpp"

namespace nhit {

namespace {

constexpr double kPi = std::numbers::pi;
// Beyond e^{-600} the Gaussian factor is flushed to zero: subnormal values
// carry too few digits for relative error control in nested cubature.
constexpr double kUnderflowArg = 600.0;

class BudgetExceeded : public NumericalFailure {
 public:
  BudgetExceeded() : NumericalFailure("cubature: evaluation budget exhausted") {}
};

struct Counter {
  long used = 0;
  long max;
  void tick() {
    if (++used > max) throw BudgetExceeded();
  }
};

void check_order(int n) {
  if (n < 0 || n > 3) throw DomainError("boundary coefficients: order must be in 0..3");
}

}  // namespace

void SphereCase::validate() const {
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("SphereCase: r must lie in [0, 1)");
  if (!std::isfinite(T)) throw DomainError("SphereCase: non-finite T");
}

void PlaneCase::validate() const {
  if (!(d > 0.0) || !std::isfinite(d)) throw DomainError("PlaneCase: d must be > 0");
  if (!std::isfinite(T)) throw DomainError("PlaneCase: non-finite T");
}

std::string to_string(CubatureMethod m) {
  switch (m) {
    case CubatureMethod::closed_form:
      return "closed_form";
    case CubatureMethod::adaptive:
      return "adaptive";
    case CubatureMethod::quasi_monte_carlo:
      return "quasi_monte_carlo";
  }
  return "unknown";
}

// ---------------------------------------------------------------- sphere

CoefficientValue sphere_cn_detail(const SphereCase& c, int n, const QuadratureConfig& q) {
  c.validate();
  q.validate();
  check_order(n);
  CoefficientValue out;
  out.cutoff_shift = std::numeric_limits<double>::quiet_NaN();
  if (!(c.T > 0.0)) return out;
  const int m = n + 1;
  const double T = c.T, r = c.r;
  Counter count{0, q.max_evals};
  quad::Options opt;
  opt.rel_tol = q.rel_tol;
  opt.abs_tol = q.abs_tol;

  // Δ = Δ_1 + Σ_{i<m} 2ξ_i + Δ_{m+1} with Δ_1 = 1.
  auto f = [&](double s, double last) {
    count.tick();
    const double D = 1.0 + 2.0 * s + last;
    if (D * D / (4.0 * T) > kUnderflowArg) return 0.0;
    return D * std::exp(-D * D / (4.0 * T)) / last;
  };
  std::function<double(int, double)> level = [&](int i, double s) -> double {
    if (i == m - 1) {
      if (r == 0.0) return 2.0 * f(s, 1.0);
      return quad::gk([&](double xi) { return f(s, std::sqrt(1.0 + r * r - 2.0 * r * xi)); }, -1.0, 1.0, opt);
    }
    return quad::gk([&, i, s](double xi) { return level(i + 1, s + xi); }, 0.0, 1.0, opt);
  };
  // 2π (4π)^{m-1} from the substitution rules times (4π)^{-(2m+3)/2} T^{-3/2}.
  const double pref = 0.5 * std::pow(4.0 * kPi * T, -1.5);
  out.value = pref * level(0, 0.0);
  out.error = q.rel_tol * std::abs(out.value);
  out.evals = count.used;
  return out;
}

double sphere_cn(const SphereCase& c, int n, const QuadratureConfig& q) { return sphere_cn_detail(c, n, q).value; }

double sphere_c0(const SphereCase& c, const QuadratureConfig& q) { return sphere_cn(c, 0, q); }

// ----------------------------------------------------------------- plane

double plane_c0(const PlaneCase& c) {
  c.validate();
  if (!(c.T > 0.0)) return 0.0;
  return nhit::erfc(c.d / std::sqrt(c.T)) / (16.0 * kPi * c.T);
}

namespace {

// Integrand over the chained polar coordinates after the trivial φ_1
// integration, in unit-cube variables: radial u -> ρ = a u / (1 - b u) on
// [0, rho_max] (a sets where samples concentrate), angular v -> φ = 2π v.
struct PlaneIntegrand {
  int m;  // number of points on the plane
  double d, T, a, b, pref;

  PlaneIntegrand(int m_, double d_, double T_, double rho_max) : m(m_), d(d_), T(T_) {
    a = std::min(T / (d + std::sqrt(T)), 0.5 * rho_max);
    b = 1.0 - a / rho_max;
    // 2π (φ_1) × (4π)^{-(2m+3)/2} T^{-3/2} × (2π)^{m-1} from v -> φ.
    pref = std::pow(2.0 * kPi, m) * std::pow(4.0 * kPi, -(2.0 * m + 3.0) / 2.0) * std::pow(T, -1.5);
  }

  // u[0..m-1] radial, u[m..2m-2] angular.
  double operator()(const double* u) const {
    double jac = pref;
    double rho[4] = {0.0, 0.0, 0.0, 0.0};
    for (int k = 0; k < m; ++k) {
      const double w = 1.0 - b * u[k];
      rho[k] = a * u[k] / w;
      jac *= a / (w * w);
    }
    double zx = rho[0], zy = 0.0, path = 0.0;
    for (int k = 1; k < m; ++k) {
      const double phi = 2.0 * kPi * u[m + k - 1];
      zx += rho[k] * std::cos(phi);
      zy += rho[k] * std::sin(phi);
      path += rho[k];
    }
    const double d1 = std::sqrt(d * d + rho[0] * rho[0]);
    const double dl = std::sqrt(zx * zx + zy * zy + d * d);
    const double D = d1 + path + dl;
    const double arg = D * D / (4.0 * T);
    if (arg > kUnderflowArg) return 0.0;
    return jac * D * std::exp(-D * D / (4.0 * T)) * rho[0] / (d1 * dl);
  }
};

double plane_adaptive(const PlaneIntegrand& g, const QuadratureConfig& q, Counter& count) {
  const int m = g.m, dims = 2 * m - 1;
  quad::Options opt;
  opt.rel_tol = q.rel_tol;
  // Inner integrals enter the total with unit weight, so an absolute floor
  // far below rel_tol × (a lower bound on c_n) costs no accuracy and stops
  // refinement on negligible tails.
  const double x = g.T / (g.T + g.d * g.d);
  opt.abs_tol = std::max(q.abs_tol, 1e-6 * q.rel_tol * plane_c0(PlaneCase{g.d, g.T}) * std::pow(x, m - 1));
  opt.max_depth = 12;
  double u[7];
  // Nesting order u_0 (ρ_1), then (v_k, u_k) pairs. The integrand is even
  // under φ_k -> -φ_k for all k at once, so v_1 is folded onto [0, 1/2].
  std::function<double(int)> level = [&](int slot) -> double {
    if (slot == dims) {
      count.tick();
      return g(u);
    }
    const int idx = (slot == 0) ? 0 : (slot % 2 == 1 ? m + (slot - 1) / 2 : slot / 2);
    const double hi = (slot == 1) ? 0.5 : 1.0;
    const double fold = (slot == 1) ? 2.0 : 1.0;
    return fold * quad::gk(
                      [&, slot, idx](double t) {
                        u[idx] = t;
                        return level(slot + 1);
                      },
                      0.0, hi, opt);
  };
  return level(0);
}

struct QmcResult {
  double mean, std_error;
  long evals;
};

// Randomly shifted Sobol points; the spread across shifts gives the error.
QmcResult plane_qmc(const PlaneIntegrand& g, const QuadratureConfig& q, int n) {
  const int dims = 2 * g.m - 1;
  std::mt19937_64 rng(q.seed * 1000003ULL + static_cast<unsigned long long>(n));
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> estimates;
  double u[7], base[7];
  const double scale = std::ldexp(1.0, -64);
  for (int s = 0; s < q.qmc_shifts; ++s) {
    double shift[7];
    for (int k = 0; k < dims; ++k) shift[k] = unif(rng);
    boost::random::sobol sob(dims);
    sob.discard(dims);  // skip the origin
    double sum = 0.0;
    for (long p = 0; p < q.qmc_points; ++p) {
      for (int k = 0; k < dims; ++k) base[k] = static_cast<double>(sob()) * scale;
      for (int k = 0; k < dims; ++k) {
        const double v = base[k] + shift[k];
        u[k] = v >= 1.0 ? v - 1.0 : v;
      }
      sum += g(u);
    }
    estimates.push_back(sum / static_cast<double>(q.qmc_points));
  }
  double mean = 0.0;
  for (double e : estimates) mean += e;
  mean /= estimates.size();
  double var = 0.0;
  for (double e : estimates) var += (e - mean) * (e - mean);
  var /= (estimates.size() - 1);
  return {mean, std::sqrt(var / estimates.size()), static_cast<long>(q.qmc_points) * q.qmc_shifts};
}

}  // namespace

CoefficientValue plane_cn_detail(const PlaneCase& c, int n, const QuadratureConfig& q) {
  c.validate();
  q.validate();
  check_order(n);
  CoefficientValue out;
  out.cutoff_shift = std::numeric_limits<double>::quiet_NaN();
  if (n == 0) {
    out.value = plane_c0(c);
    out.method = CubatureMethod::closed_form;
    return out;
  }
  const double rho_max = q.rho_max > 0.0 ? q.rho_max : (n == 1 ? 20.0 : 10.0);
  out.rho_max = rho_max;
  if (!(c.T > 0.0)) return out;
  const int m = n + 1, dims = 2 * m - 1;

  // Nested Gauss-Kronrod needs ~100 × 31^dims evaluations to converge on
  // these integrands; below that budget go straight to quasi-Monte Carlo.
  const bool try_adaptive = 100.0 * std::pow(31.0, dims) <= static_cast<double>(q.max_evals);

  auto evaluate = [&](double cutoff, CoefficientValue& v) {
    const PlaneIntegrand g(m, c.d, c.T, cutoff);
    if (try_adaptive) {
      Counter count{0, q.max_evals};
      try {
        v.value = plane_adaptive(g, q, count);
        v.error = q.rel_tol * std::abs(v.value);
        v.method = CubatureMethod::adaptive;
        v.evals = count.used;
        return;
      } catch (const NumericalFailure&) {
        // budget or tolerance not met: fall through to quasi-Monte Carlo
      }
    }
    const QmcResult r = plane_qmc(g, q, n);
    v.value = r.mean;
    v.error = r.std_error;
    v.method = CubatureMethod::quasi_monte_carlo;
    v.evals = r.evals;
  };

  evaluate(rho_max, out);
  if (q.cutoff_check) {
    CoefficientValue wide;
    evaluate(2.0 * rho_max, wide);
    out.cutoff_shift = std::abs(wide.value - out.value) / std::abs(out.value);
    const double allowed = std::max(q.rel_tol, 4.0 * (out.error + wide.error) / std::abs(out.value));
    if (out.cutoff_shift > allowed) {
      throw NumericalFailure("plane coefficient: value moves by " + std::to_string(out.cutoff_shift) +
                             " when rho_max is doubled");
    }
  }
  return out;
}

double plane_cn(const PlaneCase& c, int n, const QuadratureConfig& q) { return plane_cn_detail(c, n, q).value; }

// ------------------------------------------------------------ assembly

CoefficientReport coefficient_report(const GeometryCase& g, int max_n, const QuadratureConfig& q) {
  check_order(max_n);
  CoefficientReport rep;
  rep.series.convention = SeriesConvention::dirichlet_scattering;
  for (int n = 0; n <= max_n; ++n) {
    CoefficientValue v = std::visit(
        [&](const auto& cs) -> CoefficientValue {
          using C = std::decay_t<decltype(cs)>;
          if constexpr (std::is_same_v<C, SphereCase>) {
            return sphere_cn_detail(cs, n, q);
          } else {
            return plane_cn_detail(cs, n, q);
          }
        },
        g);
    const double sign = (n % 2 == 0) ? -1.0 : 1.0;  // (-1)^{n+1}
    rep.series.values.push_back(v.value == 0.0 ? 0.0 : sign * v.value);
    rep.details.push_back(v);
  }
  return rep;
}

CoefficientSeries coefficient_series(const GeometryCase& g, int max_n, const QuadratureConfig& q) {
  return coefficient_report(g, max_n, q).series;
}

}  // namespace nhit
