#include "polymin/baseline.hpp"

#include <utility>
#include <vector>

#include "polymin/errors.hpp"

namespace polymin {

Polyline douglas_peucker(const Polyline& poly, double tolerance) {
  if (!(tolerance >= 0.0)) throw InvalidParameter("tolerance must be non-negative");
  const auto v = poly.vertices();
  std::vector<bool> keep(v.size(), false);
  keep.front() = keep.back() = true;

  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, v.size() - 1}};
  while (!stack.empty()) {
    const auto [lo, hi] = stack.back();
    stack.pop_back();
    if (hi <= lo + 1) continue;
    std::size_t split = lo;
    double worst = -1.0;
    for (std::size_t i = lo + 1; i < hi; ++i) {
      const double d = distance_to_segment(v[i], v[lo], v[hi]);
      if (d > worst) {
        worst = d;
        split = i;
      }
    }
    if (worst > tolerance) {
      keep[split] = true;
      stack.emplace_back(lo, split);
      stack.emplace_back(split, hi);
    }
  }

  std::vector<Point> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (keep[i]) out.push_back(v[i]);
  return Polyline(std::move(out), poly.closed());
}

}  // namespace polymin
