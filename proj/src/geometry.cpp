#include "nhit/geometry.hpp"

#include <cmath>
#include <string>

#include "nhit/errors.hpp"

namespace nhit {

namespace {

void check_finite(const std::vector<double>& c) {
  if (c.empty()) throw DomainError("Point: dimension must be >= 1");
  for (double v : c) {
    if (!std::isfinite(v)) throw DomainError("Point: non-finite coordinate");
  }
}

void check_same_dim(const Point& a, const Point& b) {
  if (a.dim() != b.dim()) {
    throw DomainError("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                      std::to_string(b.dim()));
  }
}

}  // namespace

Point::Point(std::initializer_list<double> coords) : coords_(coords) { check_finite(coords_); }

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) { check_finite(coords_); }

Point Point::zero(std::size_t dim) { return Point(std::vector<double>(dim, 0.0)); }

double Point::norm() const { return std::sqrt(dot(*this)); }

double Point::dot(const Point& other) const {
  check_same_dim(*this, other);
  double s = 0.0;
  for (std::size_t i = 0; i < coords_.size(); ++i) s += coords_[i] * other.coords_[i];
  return s;
}

Point operator+(const Point& a, const Point& b) {
  check_same_dim(a, b);
  std::vector<double> c(a.dim());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] + b[i];
  return Point(std::move(c));
}

Point operator-(const Point& a, const Point& b) {
  check_same_dim(a, b);
  std::vector<double> c(a.dim());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] - b[i];
  return Point(std::move(c));
}

Point operator*(double s, const Point& p) {
  std::vector<double> c(p.dim());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = s * p[i];
  return Point(std::move(c));
}

double distance(const Point& a, const Point& b) {
  check_same_dim(a, b);
  // hypot-style accumulation is unnecessary at the scales used here.
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

PolygonalPath::PolygonalPath(Point start, std::vector<Point> intermediates, Point end)
    : start_(std::move(start)), intermediates_(std::move(intermediates)), end_(std::move(end)) {
  check_same_dim(start_, end_);
  for (const auto& z : intermediates_) check_same_dim(start_, z);
}

const Point& PolygonalPath::vertex(std::size_t k) const {
  if (k == 0) return start_;
  if (k <= intermediates_.size()) return intermediates_[k - 1];
  if (k == intermediates_.size() + 1) return end_;
  throw DomainError("PolygonalPath::vertex: index out of range");
}

PolygonalPath PolygonalPath::reversed() const {
  return PolygonalPath(end_, std::vector<Point>(intermediates_.rbegin(), intermediates_.rend()),
                       start_);
}

std::vector<double> segment_lengths(const PolygonalPath& path) {
  const std::size_t n = path.order();
  std::vector<double> out(n + 1);
  for (std::size_t k = 1; k <= n + 1; ++k) out[k - 1] = distance(path.vertex(k), path.vertex(k - 1));
  return out;
}

double total_length(const PolygonalPath& path) {
  double s = 0.0;
  for (double d : segment_lengths(path)) s += d;
  return s;
}

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0)) throw DomainError("QuadratureConfig: rel_tol must be > 0");
  if (!(abs_tol >= 0.0)) throw DomainError("QuadratureConfig: abs_tol must be >= 0");
  if (max_evals <= 0) throw DomainError("QuadratureConfig: max_evals must be > 0");
  if (!(rho_max >= 0.0) && !(rho_max < 0.0)) throw DomainError("QuadratureConfig: rho_max is NaN");
  if (qmc_points < 16) throw DomainError("QuadratureConfig: qmc_points must be >= 16");
  if (qmc_shifts < 2) throw DomainError("QuadratureConfig: qmc_shifts must be >= 2");
}

Boundary Boundary::unit_sphere(Point center, QuadratureConfig quad) {
  quad.validate();
  return Boundary{UnitSphere{std::move(center)}, quad};
}

Boundary Boundary::plane(Point normal, double offset, QuadratureConfig quad) {
  quad.validate();
  if (std::abs(normal.norm() - 1.0) > 1e-12) throw DomainError("Plane: normal must have unit norm");
  if (!std::isfinite(offset)) throw DomainError("Plane: non-finite offset");
  return Boundary{Plane{std::move(normal), offset}, quad};
}

double signed_distance(const Point& p, const Plane& plane) { return p.dot(plane.normal) - plane.offset; }

Point reflect_in_plane(const Point& p, const Plane& plane) {
  return p - (2.0 * signed_distance(p, plane)) * plane.normal;
}

Point reflect_in_plane(const Point& p, const Boundary& b) {
  const auto* plane = std::get_if<Plane>(&b.kind);
  if (plane == nullptr) throw DomainError("reflect_in_plane: boundary is not a plane");
  return reflect_in_plane(p, *plane);
}

}  // namespace nhit
