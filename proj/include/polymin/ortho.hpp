#pragma once

#include <optional>

#include "polymin/compressor.hpp"
#include "polymin/lattice.hpp"

namespace polymin {

/// Direction-constrained compression on a square lattice: M = 4 allows
/// multiples of 90 degrees, M = 8 multiples of 45 degrees, relative to the
/// rotation under test.
struct OrthoConfig {
  int directions = 4;
  double tolerance = 1.0;
  double q = 0.3;
  /// M = 8 only: disallow 135 degree turns.
  bool forbid_sharp = false;
  double rotation_step_deg = 1.0;
  std::optional<double> densify;
  bool strip_zero_segments = false;
  bool verify = true;

  void validate() const;
  /// Rotations are searched in [0, 360/M) degrees.
  double rotation_range_deg() const { return 360.0 / directions; }
};

/// Angle of direction index q out of M, radians.
double direction_angle(int q, int directions);

/// True iff v is zero or a positive multiple of (cos alpha, sin alpha).
bool direction_check(Point v, double alpha);
/// Exact form on lattice offsets: zero or a positive multiple of the unit
/// lattice step of direction q.
bool direction_check(LatticeCoord v, int q, int directions);

/// False for reversals (2|q' - q| = M) and, with forbid_sharp and M = 8,
/// for 135 degree turns.
bool transition_allowed(int q_prev, int q, int directions, bool forbid_sharp);

/// Solves at a single rotation; closed inputs go through the closed wrapper.
/// Throws NoSolution naming the first vertex that cannot be reached.
CompressedResult solve_ortho(const Polyline& poly, const OrthoConfig& cfg, double rotation);

/// Open solve with optional pinned first/last location (original frame).
CompressedResult solve_ortho_open(const Polyline& poly, const OrthoConfig& cfg, double rotation,
                                  std::optional<Point> pin = std::nullopt);

struct RotationResult {
  double rotation = 0.0;
  CompressedResult result;
};

/// Solves at every rotation step in [0, 360/M) and keeps the lexicographic
/// best. NoSolution only if every rotation fails.
RotationResult rotation_search(const Polyline& poly, const OrthoConfig& cfg);

/// Removes zero-length output segments and merges equal-direction
/// neighbours that become adjacent.
CompressedResult strip_zero_segments(const CompressedResult& result);

}  // namespace polymin
