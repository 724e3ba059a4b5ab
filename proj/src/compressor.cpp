#include "polymin/compressor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "polymin/errors.hpp"

namespace polymin {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr std::size_t kHullScanLimit = 24;
constexpr std::size_t kPruneLeaf = 4;

bool better(const LexCost& cand, std::size_t k0, std::size_t j0, const LexCost& best,
            std::int64_t bk, std::int64_t bj) {
  if (cand < best) return true;
  if (cand == best) {
    const auto k = static_cast<std::int64_t>(k0);
    const auto j = static_cast<std::int64_t>(j0);
    return k > bk || (k == bk && j < bj);
  }
  return false;
}

LexCost plus_segment(const LexCost& c, double eps) { return {c.segments + 1, c.sse + eps}; }

}  // namespace

void SolveConfig::validate() const {
  if (!(tolerance > 0.0) || !std::isfinite(tolerance))
    throw InvalidParameter("tolerance must be positive and finite");
  if (!(q > 0.0 && q < 1.0)) throw InvalidParameter("q must lie in (0, 1)");
  if (directions < 4) throw InvalidParameter("at least 4 zigzag directions required");
  if (endpoint_dirs != 4 && endpoint_dirs != 8)
    throw InvalidParameter("endpoint directions must be 4 or 8");
  if (densify && !(*densify > 0.0)) throw InvalidParameter("densify length must be positive");
}

Polyline CompressedResult::as_polyline() const {
  auto v = polyline.vertices();
  if (closed && v.size() >= 4)
    return Polyline(std::vector<Point>(v.begin(), v.end() - 1), true);
  return polyline;
}

DpTable::DpTable(const CandidateSet& cands) : rows_(cands.vertex_count()) {
  for (std::size_t k = 0; k < rows_.size(); ++k) rows_[k].resize(cands.count(k));
}

LexCost PruneBound::combined() const {
  if (rows.is_infinite()) return rows;
  return {rows.segments, rows.sse + tail};
}

bool PruneBound::skips(const LexCost& best) const {
  const LexCost b = combined();
  return b.is_infinite() || best < b;
}

Compressor::Compressor(std::span<const Point> source, CandidateSet candidates,
                       const SolveConfig& cfg)
    : source_(source.begin(), source.end()),
      cands_(std::move(candidates)),
      cfg_(cfg),
      hulls_(source),
      zigzag_(source, cfg.tolerance, cfg.directions),
      moments_(source) {
  cfg_.validate();
  if (source_.size() < 2) throw InvalidParameter("polyline needs at least two vertices");
  if (cands_.vertex_count() != source_.size())
    throw InvalidParameter("candidate set does not match the polyline");
}

bool Compressor::check(const ConvexHull& hull, std::size_t k0, Point a, std::size_t k,
                       Point b) const {
  const double t = cfg_.tolerance;
  const auto pts = hull.vertices();
  const Point d = b - a;

  if (d.x == 0.0 && d.y == 0.0) {
    if (k != k0 + 1) return false;
    const double slack = tolerance_slack(std::max(std::abs(a.x), std::abs(a.y)) + t);
    for (const Point& p : pts)
      if (std::abs(p.x - a.x) > t + slack || std::abs(p.y - a.y) > t + slack) return false;
    return true;
  }

  if (cfg_.check_zigzag) {
    const int j = zigzag_.direction_index(d);
    if (zigzag_.v(j, k) > k0) return false;
  }

  const double len = norm(d);
  const Point u = d / len;
  const Point n{-u.y, u.x};
  const double slack =
      tolerance_slack(std::max({std::abs(a.x), std::abs(a.y), std::abs(b.x), std::abs(b.y)}) + t);
  const double band = t + slack;
  const bool ends = cfg_.check_endpoints;
  const bool octagon = ends && cfg_.endpoint_dirs == 8;
  const double diag = kSqrt2 * t + slack;

  if (pts.size() <= kHullScanLimit) {
    for (const Point& p : pts) {
      const Point r = p - a;
      const double along = dot(u, r);
      const double across = dot(n, r);
      if (std::abs(across) > band) return false;
      if (ends) {
        if (along < -band || along > len + band) return false;
        if (octagon) {
          const double s1 = along + across;
          const double s2 = along - across;
          if (s1 < -diag || s1 > len + diag || s2 < -diag || s2 > len + diag) return false;
        }
      }
    }
    return true;
  }

  if (!segment_tolerance_test(hull, line_through(a, b), t)) return false;
  return !ends || endpoint_test(hull, a, b, t, cfg_.endpoint_dirs);
}

bool Compressor::check(std::size_t k0, std::size_t j0, std::size_t k, std::size_t j) const {
  if (k0 >= k) throw InvalidParameter("check requires k0 < k");
  if (cfg_.check_zigzag && any_direction_reject(zigzag_, k0, k)) return false;
  if (width_reject(hulls_, k0, k, cfg_.tolerance)) return false;
  const ConvexHull hull = hulls_.interval_hull(k0, k);
  return check(hull, k0, cands_.at(k0)[j0].position, k, cands_.at(k)[j].position);
}

double Compressor::deviation(std::size_t k0, Point a, std::size_t k, Point b) const {
  if (a == b) return integral_sq_dist(moments_, k0, k, a);
  return integral_sq_dev(moments_, k0, k, line_through(a, b));
}

double Compressor::deviation(std::size_t k0, std::size_t j0, std::size_t k, std::size_t j) const {
  return deviation(k0, cands_.at(k0)[j0].position, k, cands_.at(k)[j].position);
}

PruneBound Compressor::prune_bound(std::size_t k1, std::size_t k2, std::size_t k,
                                   std::size_t j, const DpTable& dp) const {
  if (!(k1 <= k2 && k2 < k)) throw InvalidParameter("prune_bound requires k1 <= k2 < k");
  PruneBound bound;
  for (std::size_t r = k1; r <= k2; ++r)
    for (const DpEntry& e : dp.row(r))
      if (!e.cost.is_infinite() && plus_segment(e.cost, 0.0) < bound.rows)
        bound.rows = plus_segment(e.cost, 0.0);
  bound.tail = min_sq_dev_through(moments_, k2, k, cands_.at(k)[j].position);
  return bound;
}

/// One forward pass of the DP. Keeps, for the current vertex k, the hulls of
/// k0..k for every k0 in the scan range.
class DpRun {
 public:
  explicit DpRun(const Compressor& c) : c_(c), dp_(c.cands_) {}

  DpTable run() {
    const std::size_t n = c_.source_.size();
    for (DpEntry& e : dp_.row(0)) e.cost = {0, 0.0};
    row_min_.assign(2 * n, LexCost::infinity());
    publish_row(0);
    std::size_t lo = 0;
    for (std::size_t k = 1; k < n; ++k) {
      // Hull width only grows as the interval extends backwards, so the
      // feasible start is non-decreasing in k.
      while (lo < k && width_reject(c_.hulls_, lo, k, c_.cfg_.tolerance)) ++lo;
      std::size_t first = lo;
      if (c_.cfg_.check_zigzag) first = std::max<std::size_t>(first, c_.zigzag_.w(k));
      first = std::min(first, k - 1);
      build_hulls(first, k);

      bool reached = false;
      for (std::size_t j = 0; j < c_.cands_.count(k); ++j) {
        state_ = {};
        target_ = c_.cands_.at(k)[j].position;
        k_ = k;
        if (c_.cfg_.prune)
          visit(first, k - 1);
        else
          for (std::size_t k0 = k; k0-- > first;) relax_row(k0);
        DpEntry& e = dp_.at(k, j);
        e.cost = state_.cost;
        e.prev_vertex = static_cast<std::int32_t>(state_.k0);
        e.prev_location = static_cast<std::int32_t>(state_.j0);
        reached = reached || !state_.cost.is_infinite();
      }
      if (!reached)
        throw NoSolution("no admissible segment reaches vertex " + std::to_string(k), k);
      publish_row(k);
    }
    return std::move(dp_);
  }

 private:
  struct Best {
    LexCost cost = LexCost::infinity();
    std::int64_t k0 = -1;
    std::int64_t j0 = -1;
  };

  void build_hulls(std::size_t first, std::size_t k) {
    first_ = first;
    hulls_.resize(k - first);
    std::vector<Point> buf;
    ConvexHull acc = ConvexHull::of(std::span<const Point>(&c_.source_[k], 1));
    for (std::size_t k0 = k; k0-- > first;) {
      const auto v = acc.vertices();
      buf.assign(v.begin(), v.end());
      buf.push_back(c_.source_[k0]);
      acc = ConvexHull::of(buf);
      hulls_[k0 - first] = acc;
    }
  }

  const ConvexHull& hull(std::size_t k0) const { return hulls_[k0 - first_]; }

  void consider(std::size_t k0, std::size_t j0, const LexCost& c0, double eps) {
    const LexCost cand = plus_segment(c0, eps);
    if (better(cand, k0, j0, state_.cost, state_.k0, state_.j0))
      state_ = {cand, static_cast<std::int64_t>(k0), static_cast<std::int64_t>(j0)};
  }

  // A predecessor can only win if it is not already worse before adding the
  // (non-negative) deviation of the new segment.
  bool hopeless(const LexCost& c0) const {
    if (c0.is_infinite()) return true;
    const LexCost& best = state_.cost;
    if (c0.segments + 1 > best.segments) return true;
    return c0.segments + 1 == best.segments && c0.sse > best.sse;
  }

  void relax_row(std::size_t k0) {
    const auto row = dp_.row(k0);
    const auto locs = c_.cands_.at(k0);
    for (std::size_t j0 = 0; j0 < row.size(); ++j0) {
      const LexCost& c0 = row[j0].cost;
      if (hopeless(c0)) continue;
      const Point a = locs[j0].position;
      if (!c_.check(hull(k0), k0, a, k_, target_)) continue;
      consider(k0, j0, c0, c_.deviation(k0, a, k_, target_));
    }
  }

  // Cheapest finished state per row, kept in a bottom-up segment tree.
  void publish_row(std::size_t k) {
    LexCost m = LexCost::infinity();
    for (const DpEntry& e : dp_.row(k))
      if (e.cost < m) m = e.cost;
    std::size_t i = k + row_min_.size() / 2;
    row_min_[i] = m;
    for (i /= 2; i >= 1; i /= 2) row_min_[i] = std::min(row_min_[2 * i], row_min_[2 * i + 1], less);
  }

  LexCost rows_min(std::size_t a, std::size_t b) const {
    LexCost m = LexCost::infinity();
    const std::size_t half = row_min_.size() / 2;
    for (std::size_t l = a + half, r = b + half + 1; l < r; l /= 2, r /= 2) {
      if (l & 1) m = std::min(m, row_min_[l++], less);
      if (r & 1) m = std::min(m, row_min_[--r], less);
    }
    return m;
  }

  static bool less(const LexCost& a, const LexCost& b) { return a < b; }

  PruneBound bound(std::size_t a, std::size_t b) const {
    PruneBound pb;
    const LexCost m = rows_min(a, b);
    if (m.is_infinite()) return pb;
    pb.rows = plus_segment(m, 0.0);
    if (pb.rows.segments == state_.cost.segments)
      pb.tail = min_sq_dev_through(c_.moments_, b, k_, target_);
    return pb;
  }

  // Near half first: later starts win ties, and they usually carry the
  // cheaper prefixes that let the far half be cut.
  void visit(std::size_t a, std::size_t b) {
    if (!state_.cost.is_infinite() && bound(a, b).skips(state_.cost)) return;
    if (b - a + 1 <= kPruneLeaf) {
      for (std::size_t k0 = b + 1; k0-- > a;) relax_row(k0);
      return;
    }
    const std::size_t m = a + (b - a) / 2;
    visit(m + 1, b);
    visit(a, m);
  }

  const Compressor& c_;
  DpTable dp_;
  std::vector<ConvexHull> hulls_;
  std::size_t first_ = 0;
  std::size_t k_ = 0;
  Point target_;
  Best state_;
  std::vector<LexCost> row_min_;
};

DpTable Compressor::run() const { return DpRun(*this).run(); }

CompressedResult reconstruct(const DpTable& dp, const CandidateSet& cands, std::size_t k,
                             std::size_t j) {
  if (dp.at(k, j).cost.is_infinite())
    throw CorruptTable("terminal state " + std::to_string(k) + " is unreachable");
  const LexCost terminal = dp.at(k, j).cost;
  std::vector<Point> pts;
  std::vector<std::size_t> idx;
  std::size_t steps = 0;
  while (true) {
    pts.push_back(cands.at(k)[j].position);
    idx.push_back(k);
    if (k == 0) break;
    const DpEntry& e = dp.at(k, j);
    if (e.prev_vertex < 0 || e.prev_location < 0 || static_cast<std::size_t>(e.prev_vertex) >= k ||
        ++steps > dp.rows())
      throw CorruptTable("back-pointer chain broken at vertex " + std::to_string(k));
    k = static_cast<std::size_t>(e.prev_vertex);
    j = static_cast<std::size_t>(e.prev_location);
    if (j >= cands.count(k))
      throw CorruptTable("back-pointer to missing location at vertex " + std::to_string(k));
  }
  std::reverse(pts.begin(), pts.end());
  std::reverse(idx.begin(), idx.end());

  CompressedResult r;
  r.cost = terminal;
  r.polyline = Polyline(std::move(pts));
  for (std::size_t i = 0; i + 1 < idx.size(); ++i) r.ranges.push_back({idx[i], idx[i + 1]});
  return r;
}

CompressedResult Compressor::best(const DpTable& dp) const {
  const std::size_t last = source_.size() - 1;
  std::size_t best_j = 0;
  for (std::size_t j = 1; j < cands_.count(last); ++j)
    if (dp.at(last, j).cost < dp.at(last, best_j).cost) best_j = j;
  return reconstruct(dp, cands_, last, best_j);
}

Polyline densify(const Polyline& poly, double max_length) {
  if (!(max_length > 0.0)) throw InvalidParameter("densify length must be positive");
  const auto path = poly.path();
  std::vector<Point> out;
  out.push_back(path.front());
  for (std::size_t i = 1; i < path.size(); ++i) {
    const Point a = path[i - 1];
    const Point b = path[i];
    const auto pieces = static_cast<std::size_t>(std::ceil(distance(a, b) / max_length));
    for (std::size_t s = 1; s < pieces; ++s)
      out.push_back(a + (b - a) * (static_cast<double>(s) / static_cast<double>(pieces)));
    out.push_back(b);
  }
  if (poly.closed()) out.pop_back();
  return Polyline(std::move(out), poly.closed());
}

namespace {

double distance_to_path(Point p, std::span<const Point> path) {
  if (path.size() == 1) return distance(p, path.front());
  double best = INFINITY;
  for (std::size_t i = 1; i < path.size(); ++i)
    best = std::min(best, distance_to_segment(p, path[i - 1], path[i]));
  return best;
}

template <class Visit>
void sample_path(std::span<const Point> path, double step, Visit&& visit) {
  visit(path.front());
  for (std::size_t i = 1; i < path.size(); ++i) {
    const Point a = path[i - 1];
    const Point b = path[i];
    const auto pieces =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(distance(a, b) / step)));
    for (std::size_t s = 1; s <= pieces; ++s)
      visit(a + (b - a) * (static_cast<double>(s) / static_cast<double>(pieces)));
  }
}

}  // namespace

double max_deviation(std::span<const Point> from, std::span<const Point> to, double step) {
  if (from.empty() || to.empty()) throw InvalidParameter("empty path");
  if (!(step > 0.0)) throw InvalidParameter("sampling step must be positive");
  double worst = 0.0;
  sample_path(from, step, [&](Point p) { worst = std::max(worst, distance_to_path(p, to)); });
  return worst;
}

void verify_result(std::span<const Point> source, const CompressedResult& result,
                   double tolerance, double slack_factor) {
  const auto out = result.polyline.vertices();
  const auto& ranges = result.ranges;
  if (ranges.empty() || out.size() != ranges.size() + 1)
    throw NoSolution("result shape does not match its source ranges");

  const double vertex_limit = tolerance * (1.0 + 1e-12) + 1e-12;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::size_t s = i < ranges.size() ? ranges[i].first : ranges.back().last;
    if (distance(out[i], source[s]) > vertex_limit)
      throw NoSolution("result vertex " + std::to_string(i) + " is farther than the tolerance");
  }

  // Samples of the part described by segment r are tested against the
  // neighbouring segments first; only on failure against the whole result.
  const double limit = slack_factor * tolerance + 1e-9;
  const double step = tolerance / 8.0;
  for (std::size_t r = 0; r < ranges.size(); ++r) {
    const std::size_t lo = r == 0 ? 0 : r - 1;
    const std::size_t hi = std::min(out.size() - 1, r + 2);
    const auto local = out.subspan(lo, hi - lo + 1);
    const auto part = source.subspan(ranges[r].first, ranges[r].last - ranges[r].first + 1);
    sample_path(part, step, [&](Point p) {
      if (distance_to_path(p, local) <= limit) return;
      if (distance_to_path(p, out) > limit)
        throw NoSolution("source deviates from the result by more than the tolerance near vertex " +
                         std::to_string(ranges[r].first));
    });
  }
}

namespace {

CompressedResult solve_open(std::span<const Point> source, CandidateSet cands,
                            const SolveConfig& cfg) {
  Compressor c(source, cands, cfg);
  const DpTable dp = c.run();
  CompressedResult r = c.best(dp);
  if (!cfg.verify) return r;
  try {
    verify_result(source, r, cfg.tolerance, 1.0 + cfg.q);
  } catch (const NoSolution&) {
    // The rectangle lets a corner point sit sqrt(2) T from the segment end;
    // the octagon caps that at about 1.08 T.
    if (!cfg.check_endpoints || cfg.endpoint_dirs != 4) throw;
    SolveConfig tight = cfg;
    tight.endpoint_dirs = 8;
    return solve_open(source, std::move(cands), tight);
  }
  return r;
}

}  // namespace

CompressedResult solve(const Polyline& poly, const SolveConfig& cfg) {
  cfg.validate();
  if (poly.closed()) throw InvalidParameter("solve expects an open polyline; use solve_closed");
  const Polyline src = cfg.densify ? densify(poly, *cfg.densify) : poly;
  const LatticeSpec lattice = make_lattice(cfg.tolerance, cfg.q, LatticeKind::Triangular);
  CandidateSet cands =
      candidate_locations(src, lattice, cfg.tolerance, {.dedup_shared = cfg.dedup_candidates});
  return solve_open(src.vertices(), std::move(cands), cfg);
}

namespace {

// Interior angle of the convex polygon at vertex i.
double corner_angle(std::span<const Point> ring, std::size_t i) {
  const std::size_t n = ring.size();
  const Point p = ring[i];
  const Point a = ring[(i + n - 1) % n] - p;
  const Point b = ring[(i + 1) % n] - p;
  return std::atan2(std::abs(cross(a, b)), dot(a, b));
}

Polyline open_from(std::span<const Point> ring, std::size_t start) {
  std::vector<Point> out;
  out.reserve(ring.size() + 1);
  for (std::size_t i = 0; i <= ring.size(); ++i) out.push_back(ring[(start + i) % ring.size()]);
  return Polyline(std::move(out));
}

}  // namespace

CompressedResult solve_closed_with(const Polyline& poly, const OpenSolver& solver) {
  const auto ring = poly.vertices();
  const std::size_t n = ring.size();
  if (n < 3) throw DegenerateInput("closed polyline needs at least three vertices");
  const ConvexHull hull = ConvexHull::of(ring);
  if (hull.size() < 3 || !(std::abs(hull.area()) > 0.0))
    throw DegenerateInput("closed polyline has a zero-area hull");

  // Steps 1-3: start at the hull corner with the smallest interior angle.
  const auto hv = hull.vertices();
  std::size_t sharp = 0;
  for (std::size_t i = 1; i < hv.size(); ++i)
    if (corner_angle(hv, i) < corner_angle(hv, sharp)) sharp = i;
  const auto start_it = std::find(ring.begin(), ring.end(), hv[sharp]);
  const auto start = static_cast<std::size_t>(start_it - ring.begin());

  // Step 4.
  const CompressedResult first = solver(open_from(ring, start), std::nullopt);

  // Step 5: restart from the middle vertex of that solution.
  const std::size_t m = first.segment_count();
  const std::size_t mid = m / 2;
  const std::size_t mid_source = mid < m ? first.ranges[mid].first : first.ranges.back().last;
  const std::size_t restart = (start + mid_source) % n;
  const Point pin = first.polyline[mid];

  // Step 6: both ends pinned to that location.
  CompressedResult r = solver(open_from(ring, restart), pin);
  r.closed = true;
  for (auto& range : r.ranges) {
    range.first = (range.first + restart) % n;
    range.last = (range.last + restart) % n;
  }
  return r;
}

CompressedResult solve_closed(const Polyline& poly, const SolveConfig& cfg) {
  cfg.validate();
  const Polyline ring = cfg.densify ? densify(poly, *cfg.densify) : poly;
  const LatticeSpec lattice = make_lattice(cfg.tolerance, cfg.q, LatticeKind::Triangular);
  return solve_closed_with(ring, [&](const Polyline& open, std::optional<Point> pin) {
    CandidateSet cands =
        candidate_locations(open, lattice, cfg.tolerance, {.dedup_shared = cfg.dedup_candidates});
    if (pin) {
      CandidateLocation loc;
      loc.position = *pin;
      for (const auto& c : cands.at(0))
        if (c.position == *pin) loc = c;
      cands.pin(0, loc);
      cands.pin(open.size() - 1, loc);
    }
    return solve_open(open.vertices(), std::move(cands), cfg);
  });
}

}  // namespace polymin
