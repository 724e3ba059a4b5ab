#include "polymin/zigzag.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <utility>

#include "polymin/errors.hpp"

namespace polymin {

ZigzagTables::ZigzagTables(std::span<const Point> vertices, double tolerance, int directions)
    : directions_(directions), n_(vertices.size()), tolerance_(tolerance) {
  if (directions < 4) throw InvalidParameter("zigzag tables need at least 4 directions");
  if (!(tolerance > 0.0)) throw InvalidParameter("tolerance must be positive");

  v_.assign(static_cast<std::size_t>(directions) * n_, 0);
  w_.assign(n_, 0);

  using Request = std::pair<double, std::uint32_t>;  // (projection, index + 1)
  for (int j = 0; j < directions; ++j) {
    const double alpha = direction_angle(j);
    const Point dir{std::cos(alpha), std::sin(alpha)};
    std::priority_queue<Request> queue;
    std::uint32_t k = 0;
    std::uint32_t* row = v_.data() + static_cast<std::size_t>(j) * n_;
    for (std::size_t i = 0; i < n_; ++i) {
      const double d = dot(vertices[i], dir);
      const double limit = d + 2.0 * tolerance;
      while (!queue.empty() && queue.top().first > limit) {
        k = std::max(k, queue.top().second);
        queue.pop();
      }
      row[i] = k;
      queue.emplace(d, static_cast<std::uint32_t>(i + 1));
    }
  }

  for (std::size_t i = 0; i < n_; ++i) {
    std::uint32_t m = v_[i];
    for (int j = 1; j < directions; ++j) m = std::min(m, v(j, i));
    w_[i] = m;
  }
}

int ZigzagTables::direction_index(double alpha) const {
  const double scaled = std::round(alpha * directions_ / (2.0 * std::numbers::pi));
  long long j = static_cast<long long>(scaled) % directions_;
  if (j < 0) j += directions_;
  return static_cast<int>(j);
}

namespace {

// Polynomial atan on [0, 1]; absolute error below 2e-8 rad.
double atan_unit(double x) {
  const double x2 = x * x;
  return x * (0.99997726 +
              x2 * (-0.33262347 + x2 * (0.19354346 +
                                        x2 * (-0.11643287 + x2 * (0.05265332 + x2 * -0.01172120)))));
}

double fast_atan2(double y, double x) {
  const double ax = std::abs(x);
  const double ay = std::abs(y);
  if (ax == 0.0 && ay == 0.0) return 0.0;
  double a = ax >= ay ? atan_unit(ay / ax) : 0.5 * std::numbers::pi - atan_unit(ax / ay);
  if (x < 0.0) a = std::numbers::pi - a;
  return y < 0.0 ? -a : a;
}

}  // namespace

int ZigzagTables::direction_index(Point d) const {
  const double scale = directions_ / (2.0 * std::numbers::pi);
  const double x = fast_atan2(d.y, d.x) * scale;
  const double frac = x - std::floor(x);
  // Near a rounding boundary the approximation could pick the other side.
  if (std::abs(frac - 0.5) < 1e-5 * scale + 1e-9) return direction_index(std::atan2(d.y, d.x));
  long long j = static_cast<long long>(std::floor(x + 0.5)) % directions_;
  if (j < 0) j += directions_;
  return static_cast<int>(j);
}

double ZigzagTables::direction_angle(int j) const {
  return 2.0 * std::numbers::pi * j / directions_;
}

bool zigzag_test(const ZigzagTables& zt, std::size_t first, std::size_t last,
                 double segment_angle) {
  return zt.v(zt.direction_index(segment_angle), last) <= first;
}

bool any_direction_reject(const ZigzagTables& zt, std::size_t first, std::size_t last) {
  return first < zt.w(last);
}

}  // namespace polymin
