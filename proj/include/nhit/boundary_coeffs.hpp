#pragma once

// Boundary-integrated hit functions ∫_S...∫_S H_0(z_1..z_{n+1}|y,x;T) on the
// unit sphere (x at the center) and on a plane (x = y at distance d).
// sphere_* and plane_* return the unsigned integrals; coefficient_series
// attaches the scattering sign (-1)^{n+1}.

#include <string>
#include <variant>
#include <vector>

#include "nhit/geometry.hpp"
#include "nhit/resum.hpp"

namespace nhit {

struct SphereCase {
  double r = 0.0;  // y = (0, 0, r), x at the center
  double T = 1.0;
  void validate() const;
};

struct PlaneCase {
  double d = 1.0;  // x = y = (0, 0, d), plane z = 0
  double T = 1.0;
  void validate() const;
};

using GeometryCase = std::variant<SphereCase, PlaneCase>;

enum class CubatureMethod { closed_form, adaptive, quasi_monte_carlo };

std::string to_string(CubatureMethod m);

struct CoefficientValue {
  double value = 0.0;
  /// Absolute: requested tolerance × |value| for adaptive cubature, 1σ for
  /// quasi-Monte Carlo.
  double error = 0.0;
  CubatureMethod method = CubatureMethod::adaptive;
  long evals = 0;
  /// Relative change when rho_max is doubled (plane only; NaN if unchecked).
  double cutoff_shift;
  double rho_max = 0.0;
};

/// n = 0: one point on the sphere, ξ_1 = cos θ_1.
double sphere_c0(const SphereCase& c, const QuadratureConfig& q = {});

/// n + 1 points on the sphere in the chained coordinates ξ_i = sin(θ_i/2)
/// (angle between z_i and z_{i+1}) and ξ_{n+1} = cos θ_{n+1}; every 1/Δ_i of
/// the D = 3 hit function except 1/Δ_{n+2} cancels against the measure.
CoefficientValue sphere_cn_detail(const SphereCase& c, int n, const QuadratureConfig& q = {});
double sphere_cn(const SphereCase& c, int n, const QuadratureConfig& q = {});

/// (16πT)^{-1} erfc(d/√T).
double plane_c0(const PlaneCase& c);

/// Chained polar coordinates: z_1 around the foot of x, z_k around z_{k-1},
/// so Δ_2..Δ_{n+1} are radial variables and cancel against the measure.
/// Default rho_max 20 for n = 1 and 10 beyond.
CoefficientValue plane_cn_detail(const PlaneCase& c, int n, const QuadratureConfig& q = {});
double plane_cn(const PlaneCase& c, int n, const QuadratureConfig& q = {});

struct CoefficientReport {
  CoefficientSeries series;
  std::vector<CoefficientValue> details;  // unsigned, one per order
};

/// c_0..c_{max_n} with the scattering sign. T <= 0 gives zeros.
CoefficientReport coefficient_report(const GeometryCase& g, int max_n = 3, const QuadratureConfig& q = {});
CoefficientSeries coefficient_series(const GeometryCase& g, int max_n = 3, const QuadratureConfig& q = {});

}  // namespace nhit
