#pragma once

// T-scans of the vacuum-subtracted propagator: coefficients -> Padé -> Shanks,
// next to the exact reference, written as CSV.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "nhit/boundary_coeffs.hpp"
#include "nhit/exact_ref.hpp"
#include "nhit/resum.hpp"

namespace nhit {

enum class GeometryKind { sphere, plane };
enum class Spacing { linear, log };

struct RunConfig {
  GeometryKind geometry = GeometryKind::sphere;
  double r = 0.0;  // sphere: y = (0, 0, r), x at the center
  double d = 1.0;  // plane: x = y = (0, 0, d)
  /// Unset: [0.02, 2.5] log-spaced for the sphere, [0.1, 6] linear for the plane.
  std::optional<double> t_min, t_max;
  int n_points = 25;
  std::optional<Spacing> spacing;
  /// k_max = 0: enough zeros per T for a converged sum (sphere_k_max_for).
  SphereModeSumConfig modes;
  QuadratureConfig quad;
  unsigned n_workers = 0;  // 0: hardware concurrency

  void validate() const;
  double tmin() const;
  double tmax() const;
  Spacing grid_spacing() const;
  SphereModeSumConfig modes_at(double T) const;
};

std::vector<double> time_grid(const RunConfig& cfg);

struct ScanRow {
  double T = 0.0;
  std::optional<CoefficientReport> coeffs;  // empty if the cubature failed
  std::string failure;
  ResummationResult resummed;
  double exact = 0.0;
  double exact_minus_free = 0.0;
};

/// Rows in T order; rows are computed in parallel but never reordered.
std::vector<ScanRow> propagator_scan(const RunConfig& cfg);

extern const char* const kScanColumns[13];

/// Round-trip (17 significant digit) decimal; empty for nullopt / NaN.
std::string format_number(std::optional<double> v);

void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows);

/// Cubature metadata per row and order, plus the configuration.
void write_scan_meta(std::ostream& os, const RunConfig& cfg, const std::vector<ScanRow>& rows);

/// Plotting script (matplotlib) for a scan CSV: exact solid, P_N^N dashed,
/// S_1/S_2 solid, ε as a band around S_2. Validates the CSV header and that
/// it has data.
std::string plot_script_for(const std::string& csv_path);

}  // namespace nhit
