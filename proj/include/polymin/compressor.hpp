#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "polymin/geometry.hpp"
#include "polymin/hull.hpp"
#include "polymin/lattice.hpp"
#include "polymin/zigzag.hpp"

namespace polymin {

/// Lexicographic objective: segment count first, then integral squared
/// deviation.
struct LexCost {
  std::uint64_t segments = 0;
  double sse = 0.0;

  static constexpr LexCost infinity() {
    return {std::numeric_limits<std::uint64_t>::max(), std::numeric_limits<double>::infinity()};
  }
  constexpr bool is_infinite() const {
    return segments == std::numeric_limits<std::uint64_t>::max();
  }

  friend constexpr bool operator==(const LexCost&, const LexCost&) = default;
  friend constexpr std::partial_ordering operator<=>(const LexCost& a, const LexCost& b) {
    if (a.segments != b.segments) return a.segments <=> b.segments;
    return a.sse <=> b.sse;
  }
};

struct SolveConfig {
  double tolerance = 1.0;
  double q = 0.3;
  /// Number of tabulated zigzag directions.
  int directions = 64;
  bool prune = true;
  /// 4: rectangle around the segment; 8: circumscribed octagon.
  int endpoint_dirs = 4;
  /// Split source segments longer than this before solving.
  std::optional<double> densify;
  bool dedup_candidates = false;
  // Ablation switches; disabling either voids the tolerance guarantee.
  bool check_endpoints = true;
  bool check_zigzag = true;
  /// Run the post-solve tolerance sweep and throw NoSolution on failure.
  bool verify = true;

  /// Throws InvalidParameter.
  void validate() const;
};

struct SourceRange {
  std::size_t first = 0;
  std::size_t last = 0;

  friend bool operator==(const SourceRange&, const SourceRange&) = default;
};

struct CompressedResult {
  /// Explicit vertex path; for closed results the first vertex is repeated
  /// at the end, so vertex count is always cost.segments + 1.
  Polyline polyline;
  LexCost cost;
  /// Source vertex interval described by each output segment.
  std::vector<SourceRange> ranges;
  /// Direction index per segment (orthogonal modes only).
  std::vector<int> segment_directions;
  bool closed = false;
  /// Orientation of the direction set (orthogonal modes only), radians.
  double rotation = 0.0;
  bool post_processed = false;

  std::size_t segment_count() const { return ranges.size(); }
  /// Result as a Polyline carrying the closed flag (closing vertex implicit).
  Polyline as_polyline() const;
};

struct DpEntry {
  LexCost cost = LexCost::infinity();
  std::int32_t prev_vertex = -1;
  std::int32_t prev_location = -1;
};

/// Rows of DP states, one row per source vertex, one entry per location.
class DpTable {
 public:
  DpTable() = default;
  explicit DpTable(const CandidateSet& cands);

  std::size_t rows() const { return rows_.size(); }
  std::span<DpEntry> row(std::size_t k) { return rows_.at(k); }
  std::span<const DpEntry> row(std::size_t k) const { return rows_.at(k); }
  DpEntry& at(std::size_t k, std::size_t j) { return rows_.at(k).at(j); }
  const DpEntry& at(std::size_t k, std::size_t j) const { return rows_.at(k).at(j); }

 private:
  std::vector<std::vector<DpEntry>> rows_;
};

/// Lower bound on the cost of any transition into (k, j) whose segment
/// starts at one of the vertices k1..k2.
struct PruneBound {
  /// Cheapest state in rows k1..k2, plus one segment.
  LexCost rows = LexCost::infinity();
  /// Least squared deviation of vertices k2..k from any line through p(k, j).
  double tail = 0.0;

  LexCost combined() const;
  /// True when nothing in the range can beat (or tie) `best`.
  bool skips(const LexCost& best) const;
};

/// A prepared free-direction problem: source vertices, their candidate
/// locations, and the precomputed hull index, zigzag tables and moments.
class Compressor {
 public:
  Compressor(std::span<const Point> source, CandidateSet candidates, const SolveConfig& cfg);

  std::span<const Point> source() const { return source_; }
  const CandidateSet& candidates() const { return cands_; }
  const SolveConfig& config() const { return cfg_; }
  const HullIndex& hulls() const { return hulls_; }
  const ZigzagTables& zigzag() const { return zigzag_; }
  const MomentPrefix& moments() const { return moments_; }

  /// Can segment p(k0, j0) -> p(k, j) describe source vertices k0..k?
  bool check(std::size_t k0, std::size_t j0, std::size_t k, std::size_t j) const;
  /// Same, against a precomputed hull of vertices k0..k.
  bool check(const ConvexHull& hull, std::size_t k0, Point a, std::size_t k, Point b) const;

  /// Integral squared deviation of source k0..k from the segment's carrier line.
  double deviation(std::size_t k0, Point a, std::size_t k, Point b) const;
  double deviation(std::size_t k0, std::size_t j0, std::size_t k, std::size_t j) const;

  PruneBound prune_bound(std::size_t k1, std::size_t k2, std::size_t k, std::size_t j,
                         const DpTable& dp) const;

  /// Fills the whole table. Throws NoSolution if some vertex is unreachable.
  DpTable run() const;

  /// Best terminal state and its reconstruction.
  CompressedResult best(const DpTable& dp) const;

 private:
  friend class DpRun;

  std::vector<Point> source_;
  CandidateSet cands_;
  SolveConfig cfg_;
  HullIndex hulls_;
  ZigzagTables zigzag_;
  MomentPrefix moments_;
};

/// Walks back-pointers from (k, j) to vertex 0. Throws CorruptTable.
CompressedResult reconstruct(const DpTable& dp, const CandidateSet& cands, std::size_t k,
                             std::size_t j);

/// Optimal compression of an open polyline.
CompressedResult solve(const Polyline& poly, const SolveConfig& cfg);

/// Optimal compression of a closed polyline: start at the sharpest hull
/// corner, solve, restart from the middle vertex of that solution and solve
/// again with both ends pinned to it. Throws DegenerateInput.
CompressedResult solve_closed(const Polyline& poly, const SolveConfig& cfg);

/// Open-polyline solver used by the closed wrapper. `pin`, when set, is the
/// only admissible location of the first and last vertex.
using OpenSolver =
    std::function<CompressedResult(const Polyline& open, std::optional<Point> pin)>;
CompressedResult solve_closed_with(const Polyline& poly, const OpenSolver& solver);

/// Splits every segment longer than `max_length` into equal pieces.
Polyline densify(const Polyline& poly, double max_length);

/// Largest distance from densely sampled points of `from` to the polyline
/// `to`. `step` bounds the sample spacing.
double max_deviation(std::span<const Point> from, std::span<const Point> to, double step);

/// Throws NoSolution unless every result vertex is within T of its source
/// vertex and the source stays within `slack_factor * T` of the result.
void verify_result(std::span<const Point> source, const CompressedResult& result,
                   double tolerance, double slack_factor);

}  // namespace polymin
