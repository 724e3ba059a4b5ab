#include "polymin/geometry.hpp"

#include <algorithm>
#include <string>

#include "polymin/errors.hpp"

namespace polymin {

double distance_to_segment(Point p, Point a, Point b) {
  const Point d = b - a;
  const double len2 = dot(d, d);
  if (len2 == 0.0) return distance(p, a);
  const double t = std::clamp(dot(p - a, d) / len2, 0.0, 1.0);
  return distance(p, a + d * t);
}

Polyline::Polyline(std::vector<Point> vertices, bool closed)
    : vertices_(std::move(vertices)), closed_(closed) {
  if (vertices_.size() < 2)
    throw InvalidParameter("polyline needs at least two vertices");
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!is_finite(vertices_[i]))
      throw InvalidParameter("non-finite coordinate at vertex " + std::to_string(i));
  }
}

std::vector<Point> Polyline::path() const {
  std::vector<Point> out = vertices_;
  if (closed_) out.push_back(vertices_.front());
  return out;
}

double project(Point p, double alpha) {
  return p.x * std::cos(alpha) + p.y * std::sin(alpha);
}

Line line_through(Point a, Point b) {
  const Point d = b - a;
  const double len = norm(d);
  if (len == 0.0) throw DegenerateSegment();
  const Point n{-d.y / len, d.x / len};
  // Offset from the midpoint keeps both endpoints equally accurate.
  return {n, dot(n, (a + b) * 0.5)};
}

Line line_with_direction(Point p, double alpha) {
  const Point n{-std::sin(alpha), std::cos(alpha)};
  return {n, dot(n, p)};
}

Moments segment_moments(Point a, Point b) {
  const double len = distance(a, b);
  Moments m;
  m.length = len;
  m.sx = len * (a.x + b.x) / 2.0;
  m.sy = len * (a.y + b.y) / 2.0;
  m.sxx = len * (a.x * a.x + a.x * b.x + b.x * b.x) / 3.0;
  m.syy = len * (a.y * a.y + a.y * b.y + b.y * b.y) / 3.0;
  m.sxy = len * (2.0 * a.x * a.y + a.x * b.y + b.x * a.y + 2.0 * b.x * b.y) / 6.0;
  return m;
}

namespace {

// Neumaier compensated accumulator.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      carry += (sum - t) + v;
    else
      carry += (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

}  // namespace

MomentPrefix::MomentPrefix(std::span<const Point> vertices) {
  if (vertices.empty()) return;
  anchor_ = vertices.front();
  prefix_.resize(vertices.size());
  CompensatedSum len, sx, sy, sxx, sxy, syy;
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    const Moments s = segment_moments(vertices[i - 1] - anchor_, vertices[i] - anchor_);
    len.add(s.length);
    sx.add(s.sx);
    sy.add(s.sy);
    sxx.add(s.sxx);
    sxy.add(s.sxy);
    syy.add(s.syy);
    prefix_[i] = {len.value(), sx.value(), sy.value(), sxx.value(), sxy.value(), syy.value()};
  }
}

Moments MomentPrefix::interval(std::size_t first, std::size_t last) const {
  if (first > last || last >= prefix_.size())
    throw IndexOutOfRange("moment interval [" + std::to_string(first) + ", " +
                          std::to_string(last) + "] outside polyline of " +
                          std::to_string(prefix_.size()) + " vertices");
  const Moments& a = prefix_[first];
  const Moments& b = prefix_[last];
  return {b.length - a.length, b.sx - a.sx, b.sy - a.sy,
          b.sxx - a.sxx, b.sxy - a.sxy, b.syy - a.syy};
}

double integral_sq_dev(const MomentPrefix& mp, std::size_t first, std::size_t last,
                       const Line& line) {
  const Moments m = mp.interval(first, last);
  if (m.length <= 0.0) return 0.0;
  // Centred form: n^T C n + L (n . mean - c)^2, with C the scatter about the mean.
  const Point n = line.normal;
  const double c = line.offset - dot(n, mp.anchor());
  const double mx = m.sx / m.length;
  const double my = m.sy / m.length;
  const double cxx = m.sxx - m.sx * mx;
  const double cxy = m.sxy - m.sx * my;
  const double cyy = m.syy - m.sy * my;
  const double spread = n.x * n.x * cxx + 2.0 * n.x * n.y * cxy + n.y * n.y * cyy;
  const double shift = n.x * mx + n.y * my - c;
  return std::max(0.0, spread + m.length * shift * shift);
}

double integral_sq_dist(const MomentPrefix& mp, std::size_t first, std::size_t last,
                        Point center) {
  const Moments m = mp.interval(first, last);
  if (m.length <= 0.0) return 0.0;
  const Point c = center - mp.anchor();
  const double mx = m.sx / m.length;
  const double my = m.sy / m.length;
  const double trace = (m.sxx - m.sx * mx) + (m.syy - m.sy * my);
  const double dx = mx - c.x;
  const double dy = my - c.y;
  return std::max(0.0, trace + m.length * (dx * dx + dy * dy));
}

double min_sq_dev_through(const MomentPrefix& mp, std::size_t first, std::size_t last,
                          Point pivot) {
  const Moments m = mp.interval(first, last);
  if (m.length <= 0.0) return 0.0;
  const Point c = pivot - mp.anchor();
  const double mx = m.sx / m.length - c.x;
  const double my = m.sy / m.length - c.y;
  // Second moment matrix about the pivot; its small eigenvalue is the answer.
  const double a = (m.sxx - m.sx * (m.sx / m.length)) + m.length * mx * mx;
  const double b = (m.sxy - m.sx * (m.sy / m.length)) + m.length * mx * my;
  const double d = (m.syy - m.sy * (m.sy / m.length)) + m.length * my * my;
  const double lambda = 0.5 * (a + d - std::hypot(a - d, 2.0 * b));
  return std::max(0.0, lambda);
}

}  // namespace polymin
