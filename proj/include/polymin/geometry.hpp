#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace polymin {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point operator*(Point a, double s) { return {a.x * s, a.y * s}; }
  friend constexpr Point operator*(double s, Point a) { return {a.x * s, a.y * s}; }
  friend constexpr Point operator/(Point a, double s) { return {a.x / s, a.y / s}; }
  friend constexpr bool operator==(Point a, Point b) = default;
};

constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::sqrt(a.x * a.x + a.y * a.y); }
inline double distance(Point a, Point b) { return norm(b - a); }
inline bool is_finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Rotates `p` counterclockwise by `angle` radians about the origin.
inline Point rotate(Point p, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

/// Distance from `p` to the closed segment [a, b].
double distance_to_segment(Point p, Point a, Point b);

/// Ordered vertex sequence. A closed polyline stores each vertex once; the
/// closing edge from the last vertex back to the first is implicit.
class Polyline {
 public:
  Polyline() = default;
  /// Throws InvalidParameter for fewer than two vertices or non-finite
  /// coordinates.
  explicit Polyline(std::vector<Point> vertices, bool closed = false);

  std::span<const Point> vertices() const { return vertices_; }
  const Point& operator[](std::size_t i) const { return vertices_[i]; }
  std::size_t size() const { return vertices_.size(); }
  bool closed() const { return closed_; }

  /// Vertex list with the closing vertex repeated for closed polylines.
  std::vector<Point> path() const;

  friend bool operator==(const Polyline&, const Polyline&) = default;

 private:
  std::vector<Point> vertices_;
  bool closed_ = false;
};

/// Scalar product of `p` with the unit direction at angle `alpha`.
double project(Point p, double alpha);

/// Line { p : normal . p = offset } with a unit normal.
struct Line {
  Point normal;
  double offset = 0.0;

  double signed_distance(Point p) const { return dot(normal, p) - offset; }
};

/// Carrier line of segment (a, b). Throws DegenerateSegment when a == b.
Line line_through(Point a, Point b);

/// Line through `p` with direction angle `alpha`.
Line line_with_direction(Point p, double alpha);

/// Raw arc-length moments of a stretch of polyline, relative to an anchor.
struct Moments {
  double length = 0.0;
  double sx = 0.0, sy = 0.0;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
};

/// Moments of the straight segment a -> b with respect to arc length.
Moments segment_moments(Point a, Point b);

/// Prefix sums of arc length and first/second moments over the source
/// segments, so that deviation integrals over any vertex interval are O(1).
/// Moments are taken relative to the first vertex to limit cancellation.
class MomentPrefix {
 public:
  MomentPrefix() = default;
  explicit MomentPrefix(std::span<const Point> vertices);
  explicit MomentPrefix(const Polyline& poly) : MomentPrefix(poly.vertices()) {}

  std::size_t size() const { return prefix_.size(); }
  Point anchor() const { return anchor_; }

  /// Cumulative moments from vertex 0 to vertex i, relative to `anchor()`.
  const Moments& at(std::size_t i) const { return prefix_.at(i); }

  /// Moments over vertices first..last relative to `anchor()`.
  Moments interval(std::size_t first, std::size_t last) const;

  double arc_length(std::size_t first, std::size_t last) const {
    return interval(first, last).length;
  }

 private:
  Point anchor_;
  std::vector<Moments> prefix_;
};

/// Integral over arc length of the squared distance between the source part
/// first..last and the infinite line. Throws IndexOutOfRange.
double integral_sq_dev(const MomentPrefix& mp, std::size_t first, std::size_t last,
                       const Line& line);

/// Integral over arc length of the squared distance to a single point.
/// Smallest integral squared deviation over all lines through `pivot`.
double min_sq_dev_through(const MomentPrefix& mp, std::size_t first, std::size_t last,
                          Point pivot);

double integral_sq_dist(const MomentPrefix& mp, std::size_t first, std::size_t last,
                        Point center);

}  // namespace polymin
