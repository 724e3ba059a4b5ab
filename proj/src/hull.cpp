#include "polymin/hull.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "polymin/errors.hpp"

namespace polymin {

namespace {

constexpr std::size_t kLinearScanLimit = 12;
constexpr double kInvSqrt2 = 0.70710678118654752;

bool lex_less(Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

}  // namespace

ConvexHull ConvexHull::of(std::span<const Point> points) {
  std::vector<Point> p(points.begin(), points.end());
  std::sort(p.begin(), p.end(), lex_less);
  p.erase(std::unique(p.begin(), p.end()), p.end());

  ConvexHull hull;
  if (p.size() <= 2) {
    hull.pts_ = std::move(p);
    hull.right_ = hull.pts_.empty() ? 0 : hull.pts_.size() - 1;
    return hull;
  }

  std::vector<Point> h(2 * p.size());
  std::size_t k = 0;
  for (const Point& q : p) {
    while (k >= 2 && cross(h[k - 1] - h[k - 2], q - h[k - 2]) <= 0.0) --k;
    h[k++] = q;
  }
  const std::size_t lower_end = k - 1;
  for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 1] - h[k - 2], p[i] - h[k - 2]) <= 0.0) --k;
    h[k++] = p[i];
  }
  h.resize(k - 1);
  hull.right_ = lower_end;
  hull.pts_ = std::move(h);
  if (hull.pts_.size() == 2) hull.right_ = 1;
  return hull;
}

ConvexHull ConvexHull::merge(std::span<const ConvexHull* const> hulls) {
  if (hulls.size() == 1) return *hulls.front();
  std::vector<Point> all;
  for (const ConvexHull* h : hulls) all.insert(all.end(), h->pts_.begin(), h->pts_.end());
  return of(all);
}

Point ConvexHull::extreme(Point dir) const {
  const std::size_t n = pts_.size();
  if (n <= kLinearScanLimit) {
    Point best = pts_.front();
    double best_v = dot(dir, best);
    for (std::size_t i = 1; i < n; ++i) {
      const double v = dot(dir, pts_[i]);
      if (v > best_v) {
        best_v = v;
        best = pts_[i];
      }
    }
    return best;
  }

  // Lower chain: pts_[0..right_]. Upper chain: pts_[right_..n-1], pts_[0].
  // Along the chain facing `dir`, dir . edge changes sign once, + to -.
  const bool lower = dir.y < 0.0 || (dir.y == 0.0 && dir.x > 0.0);
  const std::size_t start = lower ? 0 : right_;
  const std::size_t edges = lower ? right_ : n - right_;
  const auto at = [&](std::size_t i) { return pts_[(start + i) % n]; };
  std::size_t lo = 0, hi = edges;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (dot(dir, at(mid + 1) - at(mid)) > 0.0)
      lo = mid + 1;
    else
      hi = mid;
  }
  return at(lo);
}

double ConvexHull::area() const {
  double a = 0.0;
  for (std::size_t i = 0; i < pts_.size(); ++i)
    a += cross(pts_[i], pts_[(i + 1) % pts_.size()]);
  return 0.5 * a;
}

double ConvexHull::width() const {
  const std::size_t n = pts_.size();
  if (n <= 2) return 0.0;
  double best = INFINITY;
  std::size_t j = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = pts_[i];
    const Point e = pts_[(i + 1) % n] - a;
    while (cross(e, pts_[(j + 1) % n] - a) > cross(e, pts_[j] - a)) j = (j + 1) % n;
    best = std::min(best, cross(e, pts_[j] - a) / norm(e));
  }
  return best;
}

HullIndex::HullIndex(std::span<const Point> vertices) : n_(vertices.size()) {
  if (n_ == 0) return;
  nodes_.resize(4 * n_);
  build(1, 0, n_ - 1, vertices);
}

void HullIndex::build(std::size_t node, std::size_t lo, std::size_t hi,
                      std::span<const Point> pts) {
  if (lo == hi) {
    nodes_[node] = ConvexHull::of(pts.subspan(lo, 1));
    return;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  build(2 * node, lo, mid, pts);
  build(2 * node + 1, mid + 1, hi, pts);
  const std::array<const ConvexHull*, 2> kids{&nodes_[2 * node], &nodes_[2 * node + 1]};
  nodes_[node] = ConvexHull::merge(kids);
}

void HullIndex::collect(std::size_t node, std::size_t lo, std::size_t hi, std::size_t first,
                        std::size_t last, std::vector<const ConvexHull*>& out) const {
  if (last < lo || hi < first) return;
  if (first <= lo && hi <= last) {
    out.push_back(&nodes_[node]);
    return;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  collect(2 * node, lo, mid, first, last, out);
  collect(2 * node + 1, mid + 1, hi, first, last, out);
}

std::vector<const ConvexHull*> HullIndex::cover(std::size_t first, std::size_t last) const {
  if (first > last || last >= n_)
    throw IndexOutOfRange("hull interval [" + std::to_string(first) + ", " +
                          std::to_string(last) + "] outside " + std::to_string(n_) +
                          " vertices");
  std::vector<const ConvexHull*> out;
  collect(1, 0, n_ - 1, first, last, out);
  return out;
}

ConvexHull HullIndex::interval_hull(std::size_t first, std::size_t last) const {
  const auto parts = cover(first, last);
  return ConvexHull::merge(parts);
}

double HullIndex::support(std::size_t first, std::size_t last, Point dir) const {
  double best = -INFINITY;
  for (const ConvexHull* h : cover(first, last)) best = std::max(best, h->support(dir));
  return best;
}

namespace {

template <class Support>
bool band_holds(Support&& support, const Line& line, double tolerance) {
  const double hi = support(line.normal);
  const double lo = -support(Point{-line.normal.x, -line.normal.y});
  const double slack = tolerance_slack(std::max({std::abs(hi), std::abs(lo), std::abs(line.offset)}));
  return hi - line.offset <= tolerance + slack && line.offset - lo <= tolerance + slack;
}

template <class Support>
bool end_region_holds(Support&& support, Point a, Point b, double tolerance, int directions) {
  if (directions != 4 && directions != 8)
    throw InvalidParameter("endpoint test supports 4 or 8 directions");
  const Point d = b - a;
  const double len = norm(d);
  if (len == 0.0) throw DegenerateSegment();
  const Point u = d / len;
  const Point n{-u.y, u.x};
  std::array<Point, 8> dirs{u, u * -1.0, n, n * -1.0,
                            (u + n) * kInvSqrt2, (u - n) * kInvSqrt2,
                            (n - u) * kInvSqrt2, (u + n) * -kInvSqrt2};
  const double magnitude = std::max({std::abs(a.x), std::abs(a.y), std::abs(b.x), std::abs(b.y)});
  for (int i = 0; i < directions; ++i) {
    const Point dir = dirs[static_cast<std::size_t>(i)];
    const double limit = std::max(dot(dir, a), dot(dir, b)) + tolerance;
    if (support(dir) > limit + tolerance_slack(magnitude + tolerance)) return false;
  }
  return true;
}

}  // namespace

bool segment_tolerance_test(const HullIndex& idx, std::size_t first, std::size_t last,
                            const Line& line, double tolerance) {
  const auto parts = idx.cover(first, last);
  return band_holds(
      [&](Point dir) {
        double best = -INFINITY;
        for (const ConvexHull* h : parts) best = std::max(best, h->support(dir));
        return best;
      },
      line, tolerance);
}

bool segment_tolerance_test(const ConvexHull& hull, const Line& line, double tolerance) {
  return band_holds([&](Point dir) { return hull.support(dir); }, line, tolerance);
}

bool width_reject(const HullIndex& idx, std::size_t first, std::size_t last, double tolerance) {
  if (first >= last) return false;
  const ConvexHull hull = idx.interval_hull(first, last);
  return hull.width() > 2.0 * tolerance + tolerance_slack(2.0 * tolerance);
}

bool endpoint_test(const HullIndex& idx, std::size_t first, std::size_t last, Point a,
                   Point b, double tolerance, int directions) {
  const auto parts = idx.cover(first, last);
  return end_region_holds(
      [&](Point dir) {
        double best = -INFINITY;
        for (const ConvexHull* h : parts) best = std::max(best, h->support(dir));
        return best;
      },
      a, b, tolerance, directions);
}

bool endpoint_test(const ConvexHull& hull, Point a, Point b, double tolerance, int directions) {
  return end_region_holds([&](Point dir) { return hull.support(dir); }, a, b, tolerance,
                          directions);
}

std::size_t min_feasible_start(const HullIndex& idx, std::size_t k, double tolerance) {
  if (k >= idx.size()) throw IndexOutOfRange("vertex " + std::to_string(k) + " out of range");
  std::size_t lo = 0, hi = k;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (width_reject(idx, mid, k, tolerance))
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo;
}

}  // namespace polymin
