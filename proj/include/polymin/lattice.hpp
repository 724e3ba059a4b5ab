#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "polymin/geometry.hpp"

namespace polymin {

enum class LatticeKind { Triangular, Square };

/// Integer coordinates of a lattice node along the two basis vectors.
struct LatticeCoord {
  std::int64_t a = 0;
  std::int64_t b = 0;

  friend auto operator<=>(const LatticeCoord&, const LatticeCoord&) = default;
};

/// Global lattice of admissible vertex locations. Node (a, b) sits at
/// origin + R(rotation) (a e1 + b e2), with e1 = (side, 0) and e2 either
/// (side/2, side*sqrt(3)/2) or (0, side).
struct LatticeSpec {
  LatticeKind kind = LatticeKind::Triangular;
  double side = 0.0;
  Point origin;
  double rotation = 0.0;

  Point position(LatticeCoord c) const;
  /// Largest distance from any plane point to its nearest node.
  double covering_radius() const;
};

/// Side chosen so the covering radius equals q * tolerance.
LatticeSpec make_lattice(double tolerance, double q, LatticeKind kind);

struct CandidateLocation {
  std::size_t vertex_index = 0;
  std::size_t location_index = 0;
  Point position;
  LatticeCoord lattice;
};

/// Per-vertex lists of lattice nodes strictly within tolerance of the vertex,
/// each sorted by lattice coordinate.
class CandidateSet {
 public:
  CandidateSet() = default;
  explicit CandidateSet(std::vector<std::vector<CandidateLocation>> per_vertex);

  std::size_t vertex_count() const { return per_vertex_.size(); }
  std::span<const CandidateLocation> at(std::size_t vertex) const {
    return per_vertex_.at(vertex);
  }
  std::size_t count(std::size_t vertex) const { return per_vertex_.at(vertex).size(); }
  std::size_t max_count() const;
  std::size_t total() const;

  /// Replaces the list of one vertex with a single fixed location.
  void pin(std::size_t vertex, const CandidateLocation& location);

 private:
  std::vector<std::vector<CandidateLocation>> per_vertex_;
};

/// All lattice nodes strictly within `tolerance` of `p`, sorted.
std::vector<CandidateLocation> lattice_nodes_near(Point p, const LatticeSpec& spec,
                                                  double tolerance);

struct CandidateOptions {
  /// Drop nodes that both neighbours already offer (never empties a list).
  bool dedup_shared = false;
};

CandidateSet candidate_locations(std::span<const Point> vertices, const LatticeSpec& spec,
                                 double tolerance, CandidateOptions options = {});

inline CandidateSet candidate_locations(const Polyline& poly, const LatticeSpec& spec,
                                        double tolerance, CandidateOptions options = {}) {
  return candidate_locations(poly.vertices(), spec, tolerance, options);
}

}  // namespace polymin
