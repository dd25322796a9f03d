#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <variant>
#include <vector>

namespace nhit {

/// A position in D-dimensional Euclidean space, D >= 1 chosen at runtime.
class Point {
 public:
  Point() = default;
  Point(std::initializer_list<double> coords);
  explicit Point(std::vector<double> coords);

  /// Origin of R^dim.
  static Point zero(std::size_t dim);

  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const { return coords_; }

  double norm() const;
  double dot(const Point& other) const;

  friend Point operator+(const Point& a, const Point& b);
  friend Point operator-(const Point& a, const Point& b);
  friend Point operator*(double s, const Point& p);
  friend bool operator==(const Point& a, const Point& b) = default;

 private:
  std::vector<double> coords_;
};

double distance(const Point& a, const Point& b);

/// Path x -> z1 -> ... -> zn -> y. Segment k joins z_{k-1} and z_k with
/// z_0 := x and z_{n+1} := y.
class PolygonalPath {
 public:
  PolygonalPath(Point start, std::vector<Point> intermediates, Point end);

  const Point& start() const { return start_; }
  const Point& end() const { return end_; }
  const std::vector<Point>& intermediates() const { return intermediates_; }

  std::size_t dim() const { return start_.dim(); }
  /// Number of intermediate points n.
  std::size_t order() const { return intermediates_.size(); }

  /// Vertex k for k = 0..n+1 (0 is the start, n+1 the end).
  const Point& vertex(std::size_t k) const;

  /// Path traversed backwards: y -> zn -> ... -> z1 -> x.
  PolygonalPath reversed() const;

 private:
  Point start_;
  std::vector<Point> intermediates_;
  Point end_;
};

/// [Δ_1, ..., Δ_{n+1}].
std::vector<double> segment_lengths(const PolygonalPath& path);
double total_length(const PolygonalPath& path);

struct QuadratureConfig {
  double rel_tol = 1e-8;
  double abs_tol = 0.0;
  /// Radial cutoff for integrals over the (infinite) plane. Non-positive
  /// selects the per-order default.
  double rho_max = 0.0;
  /// Budget for adaptive cubature; past it, integrals switch to randomly
  /// shifted Sobol points.
  long max_evals = 200'000'000;
  /// Sobol points per shift and number of independent shifts.
  long qmc_points = 1L << 21;
  int qmc_shifts = 8;
  unsigned long long seed = 1;
  /// Recompute plane integrals with 2 rho_max and fail if the value moves.
  bool cutoff_check = true;

  void validate() const;
};

struct UnitSphere {
  Point center;
};

struct Plane {
  Point normal;  // unit vector
  double offset = 0.0;
};

/// Dirichlet surface plus the quadrature settings used to integrate over it.
struct Boundary {
  std::variant<UnitSphere, Plane> kind;
  QuadratureConfig quad;

  static Boundary unit_sphere(Point center, QuadratureConfig quad = {});
  static Boundary plane(Point normal, double offset, QuadratureConfig quad = {});

  bool is_plane() const { return std::holds_alternative<Plane>(kind); }
};

/// Mirror image of p through the plane {q : q·n = offset}.
Point reflect_in_plane(const Point& p, const Boundary& b);
Point reflect_in_plane(const Point& p, const Plane& plane);

/// Signed distance (p·n - offset).
double signed_distance(const Point& p, const Plane& plane);

}  // namespace nhit
