#include "nhit/resum.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nhit/errors.hpp"

namespace nhit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double coef(const std::vector<double>& c, int k) {
  return (k >= 0 && k < static_cast<int>(c.size())) ? c[k] : 0.0;
}

void check_finite(const std::vector<double>& c) {
  for (double v : c) {
    if (!std::isfinite(v)) throw DomainError("series: coefficients must be finite");
  }
}

double checked_quotient(double num, double den, const char* who) {
  const double v = num / den;
  if (den == 0.0 || !std::isfinite(v)) throw DegenerateApproximant(std::string(who) + ": vanishing denominator");
  return v;
}

// Denominator b_0 = 1, b_1..b_N of the [M/N] approximant to Σ c_k x^k.
Eigen::VectorXd pade_denominator(int M, int N, const std::vector<double>& c, const char* who) {
  Eigen::VectorXd b = Eigen::VectorXd::Zero(N + 1);
  b(0) = 1.0;
  if (N == 0) return b;
  // Σ_{j=1}^N b_j c_{k-j} = -c_k for k = M+1..M+N.
  Eigen::MatrixXd A(N, N);
  Eigen::VectorXd rhs(N);
  for (int r = 0; r < N; ++r) {
    const int k = M + 1 + r;
    for (int j = 1; j <= N; ++j) A(r, j - 1) = coef(c, k - j);
    rhs(r) = -coef(c, k);
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  if (!lu.isInvertible()) throw DegenerateApproximant(std::string(who) + ": singular denominator system");
  b.tail(N) = lu.solve(rhs);
  return b;
}

}  // namespace

double pade(int M, int N, const CoefficientSeries& c, double x) {
  if (M < 0 || N < 0) throw DomainError("pade: orders must be >= 0");
  if (static_cast<int>(c.values.size()) < M + N + 1) throw DomainError("pade: need M + N + 1 coefficients");
  check_finite(c.values);
  const Eigen::VectorXd b = pade_denominator(M, N, c.values, "pade");
  double num = 0.0, den = 0.0;
  for (int i = M; i >= 0; --i) {
    double a = 0.0;
    for (int j = 0; j <= std::min(i, N); ++j) a += b(j) * c.values[i - j];
    num = num * x + a;
  }
  for (int j = N; j >= 0; --j) den = den * x + b(j);
  return checked_quotient(num, den, "pade");
}

double pade_determinant(int M, int N, const CoefficientSeries& c, double x) {
  if (M < 0 || N < 0) throw DomainError("pade: orders must be >= 0");
  if (static_cast<int>(c.values.size()) < M + N + 1) throw DomainError("pade: need M + N + 1 coefficients");
  check_finite(c.values);
  auto phi = [&](int L) {
    double s = 0.0;
    for (int p = L; p >= 0; --p) s = s * x + c.values[p];
    return s;
  };
  Eigen::MatrixXd num(N + 1, N + 1), den(N + 1, N + 1);
  for (int j = 0; j <= N; ++j) {
    const double xp = std::pow(x, N - j);
    num(0, j) = xp * phi(M - N + j);
    den(0, j) = xp;
  }
  for (int r = 1; r <= N; ++r) {
    for (int j = 0; j <= N; ++j) num(r, j) = den(r, j) = coef(c.values, M - N + r + j);
  }
  return checked_quotient(num.determinant(), den.determinant(), "pade_determinant");
}

double diagonal_pade_strong_coupling(const CoefficientSeries& c, int N) {
  if (N < 1) throw DomainError("diagonal pade: N must be >= 1");
  if (c.convention != SeriesConvention::dirichlet_scattering) {
    throw DomainError("diagonal pade: expects the Dirichlet scattering convention");
  }
  if (static_cast<int>(c.values.size()) < N + 1) throw DomainError("diagonal pade: need at least N + 1 coefficients");
  check_finite(c.values);
  const auto& v = c.values;
  const double c0 = v[0], c1 = coef(v, 1), c2 = coef(v, 2), c3 = coef(v, 3);
  switch (N) {
    case 1:
      return checked_quotient(-c0 * c0, c1, "P11");
    case 2:
      return checked_quotient(c1 * c1 * c1 + c0 * c0 * c3 - 2.0 * c0 * c1 * c2, c2 * c2 - c1 * c3, "P22");
    case 3:
      if (coef(v, 4) == 0.0 && coef(v, 5) == 0.0) {
        return checked_quotient(
            -(c2 * c2 * c2 * c2 - 3.0 * c1 * c2 * c2 * c3 + c1 * c1 * c3 * c3 + 2.0 * c0 * c2 * c3 * c3), c3 * c3 * c3,
            "P33");
      }
      break;
    default:
      break;
  }
  // Series of λ Σ c_n λ^n: g_0 = 0, g_k = c_{k-1}. The λ -> ∞ limit of the
  // [N/N] approximant is a_N / b_N.
  std::vector<double> g(2 * N + 1, 0.0);
  for (int k = 1; k <= 2 * N; ++k) g[k] = coef(v, k - 1);
  const Eigen::VectorXd b = pade_denominator(N, N, g, "diagonal pade");
  double aN = 0.0;
  for (int j = 0; j <= N; ++j) aN += b(j) * g[N - j];
  return checked_quotient(aN, b(N), "diagonal pade");
}

double diagonal_pade_strong_coupling_determinant(const CoefficientSeries& c, int N) {
  if (N < 1) throw DomainError("diagonal pade: N must be >= 1");
  if (static_cast<int>(c.values.size()) < N + 1) throw DomainError("diagonal pade: need at least N + 1 coefficients");
  check_finite(c.values);
  const auto& v = c.values;
  Eigen::MatrixXd num(N + 1, N + 1), den(N, N);
  num(0, 0) = 0.0;
  for (int j = 1; j <= N; ++j) num(0, j) = coef(v, j - 1);
  for (int r = 1; r <= N; ++r) {
    for (int j = 0; j <= N; ++j) num(r, j) = coef(v, r - 1 + j);
  }
  for (int r = 0; r < N; ++r) {
    for (int j = 0; j < N; ++j) den(r, j) = coef(v, r + j + 1);
  }
  return checked_quotient(num.determinant(), den.determinant(), "diagonal pade determinant");
}

double kv_pade(const CoefficientSeries& C, int N) {
  if (N < 0) throw DomainError("kv_pade: N must be >= 0");
  if (C.convention != SeriesConvention::general_potential) {
    throw DomainError("kv_pade: expects the general potential convention");
  }
  if (static_cast<int>(C.values.size()) < 2 * N + 1) throw DomainError("kv_pade: need 2N + 1 coefficients");
  check_finite(C.values);
  Eigen::MatrixXd num(N + 1, N + 1), den(N + 1, N + 1);
  double phi = 0.0;
  for (int j = 0; j <= N; ++j) {
    phi += C.values[j];
    num(0, j) = phi;
    den(0, j) = 1.0;
  }
  for (int r = 1; r <= N; ++r) {
    for (int j = 0; j <= N; ++j) num(r, j) = den(r, j) = C.values[r + j];
  }
  return checked_quotient(num.determinant(), den.determinant(), "kv_pade");
}

namespace {

double shanks_step(double prev, double cur, double next) {
  const double den = next + prev - 2.0 * cur;
  const double scale = std::max({std::abs(prev), std::abs(cur), std::abs(next)});
  if (!(std::abs(den) > 8.0 * kEps * scale)) {
    throw DegenerateApproximant("shanks: vanishing second difference");
  }
  return (next * prev - cur * cur) / den;
}

}  // namespace

std::vector<double> shanks(std::span<const double> a) {
  if (a.size() < 3) throw DomainError("shanks: need at least 3 terms");
  std::vector<double> out;
  out.reserve(a.size() - 2);
  for (std::size_t i = 1; i + 1 < a.size(); ++i) out.push_back(shanks_step(a[i - 1], a[i], a[i + 1]));
  return out;
}

ShanksPair shanks_s1_s2(double p11, double p22, double p33) {
  const double s1 = shanks_step(p11, p22, p33);
  return {s1, shanks_step(s1, p22, p11)};
}

double shanks_s2_literal(double s1, double p11, double p22) {
  return checked_quotient(s1 + p11 - p22 * p22, s1 + p11 - 2.0 * p22, "shanks_s2_literal");
}

double leibniz_error(double s1, double s2) {
  if (s2 == 0.0 || !std::isfinite(s2)) throw DegenerateApproximant("leibniz_error: S2 vanishes");
  return std::abs(s2 - s1) / std::abs(s2);
}

ResummationResult resum(double T, const CoefficientSeries& c, std::optional<double> exact) {
  ResummationResult r;
  r.T = T;
  r.exact = exact;
  auto attempt = [&](int N) -> std::optional<double> {
    try {
      return diagonal_pade_strong_coupling(c, N);
    } catch (const DegenerateApproximant&) {
      return std::nullopt;
    }
  };
  r.p11 = attempt(1);
  if (c.values.size() >= 3) r.p22 = attempt(2);
  if (c.values.size() >= 4) r.p33 = attempt(3);
  if (r.p11 && r.p22 && r.p33) {
    // A failed step leaves its column and everything after it empty.
    try {
      r.s1 = shanks_step(*r.p11, *r.p22, *r.p33);
      r.s2 = shanks_step(*r.s1, *r.p22, *r.p11);
      r.eps = leibniz_error(*r.s1, *r.s2);
    } catch (const DegenerateApproximant&) {
    }
  }
  return r;
}

}  // namespace nhit
