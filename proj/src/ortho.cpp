#include "polymin/ortho.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "polymin/errors.hpp"

namespace polymin {

namespace {

constexpr std::array<LatticeCoord, 8> kSteps8{{
    {1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1}}};

LatticeCoord unit_step(int q, int directions) {
  return kSteps8[static_cast<std::size_t>(directions == 4 ? 2 * q : q)];
}

int positive_mod(int a, int m) { return ((a % m) + m) % m; }

struct OrthoState {
  LexCost cost = LexCost::infinity();
  std::int32_t prev_location = -1;
  std::int32_t prev_direction = -1;
};

}  // namespace

void OrthoConfig::validate() const {
  if (directions != 4 && directions != 8)
    throw InvalidParameter("orthogonal mode supports 4 or 8 directions");
  if (!(tolerance > 0.0) || !std::isfinite(tolerance))
    throw InvalidParameter("tolerance must be positive and finite");
  if (!(q > 0.0 && q < 1.0)) throw InvalidParameter("q must lie in (0, 1)");
  if (!(rotation_step_deg > 0.0)) throw InvalidParameter("rotation step must be positive");
  if (densify && !(*densify > 0.0)) throw InvalidParameter("densify length must be positive");
}

double direction_angle(int q, int directions) {
  return 2.0 * std::numbers::pi * q / directions;
}

bool direction_check(Point v, double alpha) {
  if (v.x == 0.0 && v.y == 0.0) return true;
  const Point d{std::cos(alpha), std::sin(alpha)};
  const double len = norm(v);
  return dot(v, d) > 0.0 && std::abs(cross(d, v)) <= 1e-12 * len;
}

bool direction_check(LatticeCoord v, int q, int directions) {
  if (v.a == 0 && v.b == 0) return true;
  const LatticeCoord s = unit_step(q, directions);
  // v = t * s with t > 0.
  if (v.a * s.b != v.b * s.a) return false;
  return v.a * s.a + v.b * s.b > 0;
}

bool transition_allowed(int q_prev, int q, int directions, bool forbid_sharp) {
  if (2 * std::abs(q_prev - q) == directions) return false;
  if (directions == 8 && forbid_sharp && std::abs(4 - positive_mod(q_prev - q, 8)) == 1)
    return false;
  return true;
}

CompressedResult solve_ortho_open(const Polyline& poly, const OrthoConfig& cfg, double rotation,
                                  std::optional<Point> pin) {
  cfg.validate();
  const int m = cfg.directions;
  const double t = cfg.tolerance;
  const Polyline src = cfg.densify ? densify(poly, *cfg.densify) : poly;
  const std::size_t n = src.size();

  std::vector<Point> frame(n);
  for (std::size_t i = 0; i < n; ++i) frame[i] = rotate(src[i], -rotation);

  // Lattice anchored at the bounding-box corner of the rotated input so the
  // solve is translation invariant and independent of the vertex order.
  LatticeSpec lattice = make_lattice(t, cfg.q, LatticeKind::Square);
  lattice.origin = frame.front();
  for (const Point& p : frame)
    lattice.origin = {std::min(lattice.origin.x, p.x), std::min(lattice.origin.y, p.y)};
  CandidateSet cands = candidate_locations(std::span<const Point>(frame), lattice, t);

  if (pin) {
    const auto first = cands.at(0);
    std::size_t pick = 0;
    double nearest = INFINITY;
    for (std::size_t j = 0; j < first.size(); ++j) {
      const double d = distance(rotate(first[j].position, rotation), *pin);
      if (d < nearest) {
        nearest = d;
        pick = j;
      }
    }
    const CandidateLocation loc = first[pick];
    cands.pin(0, loc);
    cands.pin(n - 1, loc);
  }

  const MomentPrefix moments{std::span<const Point>(frame)};
  const auto mu = static_cast<std::size_t>(m);
  std::vector<std::vector<OrthoState>> table(n);
  table[0].assign(cands.count(0) * mu, OrthoState{{0, 0.0}, -1, -1});

  for (std::size_t k = 1; k < n; ++k) {
    const auto prev = cands.at(k - 1);
    const auto cur = cands.at(k);
    auto& row = table[k];
    row.assign(cur.size() * mu, OrthoState{});
    const auto& prev_row = table[k - 1];

    const auto find_prev = [&](LatticeCoord c) -> std::int64_t {
      const auto it = std::lower_bound(
          prev.begin(), prev.end(), c,
          [](const CandidateLocation& l, const LatticeCoord& v) { return l.lattice < v; });
      if (it == prev.end() || it->lattice != c) return -1;
      return it - prev.begin();
    };

    const auto relax = [&](std::size_t j, std::size_t jp, int qp) {
      const OrthoState& from = prev_row[jp * mu + static_cast<std::size_t>(qp)];
      if (from.cost.is_infinite()) return;
      const Line carrier = line_with_direction(prev[jp].position, direction_angle(qp, m));
      const double eps = integral_sq_dev(moments, k - 1, k, carrier);
      for (int qn = 0; qn < m; ++qn) {
        if (!transition_allowed(qp, qn, m, cfg.forbid_sharp)) continue;
        const LexCost cand{from.cost.segments + (qp != qn ? 1u : 0u), from.cost.sse + eps};
        OrthoState& to = row[j * mu + static_cast<std::size_t>(qn)];
        if (cand < to.cost)
          to = {cand, static_cast<std::int32_t>(jp), static_cast<std::int32_t>(qp)};
      }
    };

    const double reach_pad = t + lattice.side;
    for (std::size_t j = 0; j < cur.size(); ++j) {
      const LatticeCoord c = cur[j].lattice;
      // Zero-length move: allowed with any incoming direction.
      if (const auto jp = find_prev(c); jp >= 0)
        for (int qp = 0; qp < m; ++qp) relax(j, static_cast<std::size_t>(jp), qp);
      // Lattice nodes on the backward ray that lie near vertex k-1.
      const double reach = distance(cur[j].position, frame[k - 1]) + reach_pad;
      for (int qp = 0; qp < m; ++qp) {
        const LatticeCoord s = unit_step(qp, m);
        const double step_len = lattice.side * std::hypot(double(s.a), double(s.b));
        const auto steps = static_cast<std::int64_t>(reach / step_len) + 1;
        for (std::int64_t r = 1; r <= steps; ++r) {
          const auto jp = find_prev({c.a - r * s.a, c.b - r * s.b});
          if (jp >= 0) relax(j, static_cast<std::size_t>(jp), qp);
        }
      }
    }

    if (std::all_of(row.begin(), row.end(), [](const OrthoState& s) { return s.cost.is_infinite(); }))
      throw NoSolution("no axis-aligned connection reaches vertex " + std::to_string(k) +
                           "; densify the input or lower q",
                       k);
  }

  // Terminal state.
  std::size_t best = 0;
  for (std::size_t s = 1; s < table[n - 1].size(); ++s)
    if (table[n - 1][s].cost < table[n - 1][best].cost) best = s;
  const double sse = table[n - 1][best].cost.sse;

  // Walk back, recording location and move direction per vertex.
  std::vector<std::size_t> loc(n);
  std::vector<int> move(n, 0);  // move[k]: direction of k-1 -> k
  std::size_t j = best / mu;
  int q = static_cast<int>(best % mu);
  for (std::size_t k = n - 1; k > 0; --k) {
    loc[k] = j;
    const OrthoState& st = table[k][j * mu + static_cast<std::size_t>(q)];
    if (st.prev_location < 0) throw CorruptTable("orthogonal back-pointer missing");
    move[k] = st.prev_direction;
    j = static_cast<std::size_t>(st.prev_location);
    q = st.prev_direction;
  }
  loc[0] = j;

  const auto pos = [&](std::size_t k) { return rotate(cands.at(k)[loc[k]].position, rotation); };
  CompressedResult r;
  std::vector<Point> out{pos(0)};
  std::size_t seg_start = 0;
  for (std::size_t k = 1; k < n; ++k) {
    if (k == n - 1 || move[k + 1] != move[k]) {
      out.push_back(pos(k));
      r.ranges.push_back({seg_start, k});
      r.segment_directions.push_back(move[k]);
      seg_start = k;
    }
  }
  r.polyline = Polyline(std::move(out));
  r.cost = {r.ranges.size(), sse};
  r.rotation = rotation;
  if (cfg.verify) verify_result(src.vertices(), r, t, 1.0 + cfg.q);
  return r;
}

CompressedResult solve_ortho(const Polyline& poly, const OrthoConfig& cfg, double rotation) {
  cfg.validate();
  CompressedResult r;
  if (poly.closed()) {
    const Polyline ring = cfg.densify ? densify(poly, *cfg.densify) : poly;
    OrthoConfig inner = cfg;
    inner.densify.reset();
    r = solve_closed_with(ring, [&](const Polyline& open, std::optional<Point> pin) {
      return solve_ortho_open(open, inner, rotation, pin);
    });
  } else {
    r = solve_ortho_open(poly, cfg, rotation);
  }
  if (cfg.strip_zero_segments) r = strip_zero_segments(r);
  return r;
}

RotationResult rotation_search(const Polyline& poly, const OrthoConfig& cfg) {
  cfg.validate();
  const double range = cfg.rotation_range_deg();
  const auto steps = static_cast<int>(std::ceil(range / cfg.rotation_step_deg - 1e-9));
  std::optional<RotationResult> best;
  std::string last_error;
  for (int i = 0; i < steps; ++i) {
    const double deg = i * cfg.rotation_step_deg;
    if (deg >= range) break;
    const double rad = deg * std::numbers::pi / 180.0;
    try {
      CompressedResult r = solve_ortho(poly, cfg, rad);
      if (!best || r.cost < best->result.cost) best = RotationResult{rad, std::move(r)};
    } catch (const NoSolution& e) {
      last_error = e.what();
    }
  }
  if (!best) throw NoSolution("no rotation admits an orthogonal solution: " + last_error);
  return std::move(*best);
}

CompressedResult strip_zero_segments(const CompressedResult& result) {
  struct Piece {
    Point from, to;
    int direction;
    SourceRange range;
  };
  const auto v = result.polyline.vertices();
  const bool labelled = result.segment_directions.size() == result.ranges.size();
  std::vector<Piece> pieces;
  std::optional<std::size_t> pending_first;
  for (std::size_t i = 0; i < result.ranges.size(); ++i) {
    Piece p{v[i], v[i + 1], labelled ? result.segment_directions[i] : -1, result.ranges[i]};
    if (p.from == p.to) {
      // Zero-length: its source range goes to a neighbour.
      if (!pieces.empty())
        pieces.back().range.last = p.range.last;
      else if (!pending_first)
        pending_first = p.range.first;
      continue;
    }
    if (pending_first) {
      p.range.first = *pending_first;
      pending_first.reset();
    }
    pieces.push_back(p);
  }
  if (pieces.empty()) {
    pieces.push_back({v.front(), v.back(), labelled ? result.segment_directions.front() : -1,
                      {result.ranges.front().first, result.ranges.back().last}});
  }

  std::vector<Piece> merged;
  for (const Piece& p : pieces) {
    if (!merged.empty() && labelled && merged.back().direction == p.direction) {
      merged.back().to = p.to;
      merged.back().range.last = p.range.last;
    } else {
      merged.push_back(p);
    }
  }

  CompressedResult r = result;
  std::vector<Point> out{merged.front().from};
  r.ranges.clear();
  r.segment_directions.clear();
  for (const Piece& p : merged) {
    out.push_back(p.to);
    r.ranges.push_back(p.range);
    if (labelled) r.segment_directions.push_back(p.direction);
  }
  r.polyline = Polyline(std::move(out));
  r.cost.segments = r.ranges.size();
  r.post_processed = true;
  return r;
}

}  // namespace polymin
