#pragma once

// Padé approximants and Shanks acceleration for the scattering series of the
// propagator.

#include <optional>
#include <span>
#include <vector>

namespace nhit {

enum class SeriesConvention {
  /// c_n = (-1)^{n+1} ∫_S...∫_S H; K - K_0 = Σ_n c_n λ^{n+1}, λ -> ∞.
  dirichlet_scattering,
  /// C_p = λ^p-coefficient of K itself (C_0 = K_0), evaluated at λ = 1.
  general_potential,
};

struct CoefficientSeries {
  std::vector<double> values;
  SeriesConvention convention = SeriesConvention::dirichlet_scattering;
};

/// [M/N] Padé approximant of Σ c_k x^k at x, via a pivoted solve for the
/// denominator. Needs M + N + 1 coefficients.
double pade(int M, int N, const CoefficientSeries& c, double x);

/// Same approximant as a quotient of (N+1)×(N+1) determinants (Cramer's rule).
double pade_determinant(int M, int N, const CoefficientSeries& c, double x);

/// lim_{λ->∞} of the [N/N] approximant of Σ c_n λ^{n+1}. Explicit formulas for
/// N <= 3, pivoted solve beyond. Coefficients past the end of the series are
/// taken as zero, so N = 3 works with c_0..c_3.
double diagonal_pade_strong_coupling(const CoefficientSeries& c, int N);

/// Same limit as the quotient of Hankel-type determinants.
double diagonal_pade_strong_coupling_determinant(const CoefficientSeries& c, int N);

/// λ -> 1 diagonal approximant for a general potential, with partial sums
/// φ_L = Σ_{p<=L} C_p in the first row. Needs 2N + 1 coefficients.
double kv_pade(const CoefficientSeries& C, int N);

/// One Shanks step over every interior index; the result is 2 shorter.
std::vector<double> shanks(std::span<const double> a);

struct ShanksPair {
  double s1;
  double s2;
};

/// S_1 = Shanks(P_1^1, P_2^2, P_3^3) and S_2 = Shanks(P_1^1, P_2^2, S_1),
/// the second iterate built from the only three values left.
ShanksPair shanks_s1_s2(double p11, double p22, double p33);

/// (S_1 + P_1^1 - (P_2^2)^2) / (S_1 + P_1^1 - 2 P_2^2), as sometimes quoted.
/// Not homogeneous in the P's; kept for comparison only.
double shanks_s2_literal(double s1, double p11, double p22);

/// |S_2 - S_1| / |S_2|.
double leibniz_error(double s1, double s2);

struct ResummationResult {
  double T = 0.0;
  std::optional<double> p11, p22, p33, s1, s2, eps, exact;
};

/// Everything downstream of the coefficients at one T. Approximants whose
/// denominator vanishes stay empty, as does everything depending on them.
ResummationResult resum(double T, const CoefficientSeries& c, std::optional<double> exact = std::nullopt);

}  // namespace nhit
