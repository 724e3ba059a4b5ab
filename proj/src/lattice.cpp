#include "polymin/lattice.hpp"

#include <algorithm>
#include <cmath>

#include "polymin/errors.hpp"

namespace polymin {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;
constexpr double kSqrt2 = 1.4142135623730951;

}  // namespace

Point LatticeSpec::position(LatticeCoord c) const {
  const double a = static_cast<double>(c.a);
  const double b = static_cast<double>(c.b);
  Point local;
  if (kind == LatticeKind::Triangular)
    local = {side * a + 0.5 * side * b, 0.5 * kSqrt3 * side * b};
  else
    local = {side * a, side * b};
  if (rotation != 0.0) local = rotate(local, rotation);
  return origin + local;
}

double LatticeSpec::covering_radius() const {
  return kind == LatticeKind::Triangular ? side / kSqrt3 : side / kSqrt2;
}

LatticeSpec make_lattice(double tolerance, double q, LatticeKind kind) {
  if (!(tolerance > 0.0) || !std::isfinite(tolerance))
    throw InvalidParameter("tolerance must be positive");
  if (!(q > 0.0 && q < 1.0)) throw InvalidParameter("q must lie in (0, 1)");
  LatticeSpec spec;
  spec.kind = kind;
  spec.side = (kind == LatticeKind::Triangular ? kSqrt3 : kSqrt2) * q * tolerance;
  return spec;
}

CandidateSet::CandidateSet(std::vector<std::vector<CandidateLocation>> per_vertex)
    : per_vertex_(std::move(per_vertex)) {}

std::size_t CandidateSet::max_count() const {
  std::size_t m = 0;
  for (const auto& v : per_vertex_) m = std::max(m, v.size());
  return m;
}

std::size_t CandidateSet::total() const {
  std::size_t t = 0;
  for (const auto& v : per_vertex_) t += v.size();
  return t;
}

void CandidateSet::pin(std::size_t vertex, const CandidateLocation& location) {
  auto& list = per_vertex_.at(vertex);
  CandidateLocation pinned = location;
  pinned.vertex_index = vertex;
  pinned.location_index = 0;
  list.assign(1, pinned);
}

std::vector<CandidateLocation> lattice_nodes_near(Point p, const LatticeSpec& spec,
                                                  double tolerance) {
  // Work in the lattice frame, then generate positions through
  // LatticeSpec::position so shared nodes are bit-identical across vertices.
  Point local = p - spec.origin;
  if (spec.rotation != 0.0) local = rotate(local, -spec.rotation);

  const double s = spec.side;
  const double row_height = spec.kind == LatticeKind::Triangular ? 0.5 * kSqrt3 * s : s;
  const double row_shift = spec.kind == LatticeKind::Triangular ? 0.5 * s : 0.0;
  const double t2 = tolerance * tolerance;

  std::vector<CandidateLocation> out;
  const auto b_lo = static_cast<std::int64_t>(std::floor((local.y - tolerance) / row_height)) - 1;
  const auto b_hi = static_cast<std::int64_t>(std::ceil((local.y + tolerance) / row_height)) + 1;
  for (std::int64_t b = b_lo; b <= b_hi; ++b) {
    const double row_x = row_shift * static_cast<double>(b);
    const auto a_lo = static_cast<std::int64_t>(std::floor((local.x - tolerance - row_x) / s)) - 1;
    const auto a_hi = static_cast<std::int64_t>(std::ceil((local.x + tolerance - row_x) / s)) + 1;
    for (std::int64_t a = a_lo; a <= a_hi; ++a) {
      const LatticeCoord c{a, b};
      const Point pos = spec.position(c);
      const Point d = pos - p;
      if (dot(d, d) < t2) out.push_back({0, 0, pos, c});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const CandidateLocation& l, const CandidateLocation& r) { return l.lattice < r.lattice; });
  return out;
}

CandidateSet candidate_locations(std::span<const Point> vertices, const LatticeSpec& spec,
                                 double tolerance, CandidateOptions options) {
  std::vector<std::vector<CandidateLocation>> lists(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i)
    lists[i] = lattice_nodes_near(vertices[i], spec, tolerance);

  if (options.dedup_shared && vertices.size() > 2) {
    const auto shared = [](const std::vector<CandidateLocation>& list, LatticeCoord c) {
      return std::binary_search(
          list.begin(), list.end(), c,
          [](const auto& l, const auto& r) {
            if constexpr (std::is_same_v<std::decay_t<decltype(l)>, LatticeCoord>)
              return l < r.lattice;
            else
              return l.lattice < r;
          });
    };
    std::vector<std::vector<CandidateLocation>> kept(vertices.size());
    kept.front() = lists.front();
    kept.back() = lists.back();
    for (std::size_t i = 1; i + 1 < vertices.size(); ++i) {
      for (const auto& loc : lists[i]) {
        if (!(shared(lists[i - 1], loc.lattice) && shared(lists[i + 1], loc.lattice)))
          kept[i].push_back(loc);
      }
      if (kept[i].empty()) kept[i] = lists[i];
    }
    lists = std::move(kept);
  }

  for (std::size_t i = 0; i < lists.size(); ++i) {
    if (lists[i].empty())
      throw InvalidParameter("lattice too coarse: no location near vertex " + std::to_string(i));
    for (std::size_t j = 0; j < lists[i].size(); ++j) {
      lists[i][j].vertex_index = i;
      lists[i][j].location_index = j;
    }
  }
  return CandidateSet(std::move(lists));
}

}  // namespace polymin
