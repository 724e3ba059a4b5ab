#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "polymin/geometry.hpp"

namespace polymin {

/// Convex polygon in counterclockwise order starting at the lowest of the
/// leftmost points. Collinear boundary points are dropped.
class ConvexHull {
 public:
  ConvexHull() = default;

  /// Andrew's monotone chain.
  static ConvexHull of(std::span<const Point> points);
  /// Hull of the union of several hulls.
  static ConvexHull merge(std::span<const ConvexHull* const> hulls);

  std::span<const Point> vertices() const { return pts_; }
  std::size_t size() const { return pts_.size(); }
  bool empty() const { return pts_.empty(); }

  /// Vertex maximising dir . p; O(log n) on both chains.
  Point extreme(Point dir) const;
  double support(Point dir) const { return dot(dir, extreme(dir)); }

  double area() const;
  /// Minimum extent over all directions (rotating calipers).
  double width() const;

 private:
  std::vector<Point> pts_;
  std::size_t right_ = 0;  // index of the last vertex of the lower chain
};

/// Segment tree of convex hulls over vertex index ranges.
class HullIndex {
 public:
  HullIndex() = default;
  explicit HullIndex(std::span<const Point> vertices);
  explicit HullIndex(const Polyline& poly) : HullIndex(poly.vertices()) {}

  std::size_t size() const { return n_; }

  /// Sub-hulls whose point sets partition vertices first..last.
  std::vector<const ConvexHull*> cover(std::size_t first, std::size_t last) const;
  ConvexHull interval_hull(std::size_t first, std::size_t last) const;

  /// Max of dir . p over vertices first..last.
  double support(std::size_t first, std::size_t last, Point dir) const;

 private:
  void build(std::size_t node, std::size_t lo, std::size_t hi, std::span<const Point> pts);
  void collect(std::size_t node, std::size_t lo, std::size_t hi, std::size_t first,
               std::size_t last, std::vector<const ConvexHull*>& out) const;

  std::size_t n_ = 0;
  std::vector<ConvexHull> nodes_;
};

/// Slack used by every containment comparison.
inline double tolerance_slack(double magnitude) {
  return 1e-12 * std::max(1.0, magnitude);
}

/// Every vertex of first..last lies within T of the line.
bool segment_tolerance_test(const HullIndex& idx, std::size_t first, std::size_t last,
                            const Line& line, double tolerance);
bool segment_tolerance_test(const ConvexHull& hull, const Line& line, double tolerance);

/// True when no strip of width 2T covers the interval hull.
bool width_reject(const HullIndex& idx, std::size_t first, std::size_t last, double tolerance);

/// The interval hull lies inside segment (a, b) grown by T: a rectangle for
/// 4 directions, the circumscribed octagon for 8. Throws DegenerateSegment.
bool endpoint_test(const HullIndex& idx, std::size_t first, std::size_t last, Point a,
                   Point b, double tolerance, int directions = 4);
bool endpoint_test(const ConvexHull& hull, Point a, Point b, double tolerance,
                   int directions = 4);

/// Smallest k' with width_reject(k', k) false.
std::size_t min_feasible_start(const HullIndex& idx, std::size_t k, double tolerance);

}  // namespace polymin
