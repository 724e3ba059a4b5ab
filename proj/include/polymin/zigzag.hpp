#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "polymin/geometry.hpp"

namespace polymin {

/// Direction-reversal tables. For direction j and vertex i, `v(j, i)` is the
/// smallest start index s such that no pair a < b in [s, i] moves backwards
/// along direction j by more than twice the tolerance. `w(i)` is the minimum
/// over all directions. Memory is dominated by V: directions * N * 4 bytes.
class ZigzagTables {
 public:
  ZigzagTables() = default;
  /// Throws InvalidParameter unless directions >= 4 and tolerance > 0.
  ZigzagTables(std::span<const Point> vertices, double tolerance, int directions);
  ZigzagTables(const Polyline& poly, double tolerance, int directions)
      : ZigzagTables(poly.vertices(), tolerance, directions) {}

  int directions() const { return directions_; }
  std::size_t size() const { return n_; }
  double tolerance() const { return tolerance_; }

  std::uint32_t v(int j, std::size_t i) const {
    return v_[static_cast<std::size_t>(j) * n_ + i];
  }
  std::uint32_t w(std::size_t i) const { return w_[i]; }

  /// Nearest tabulated direction to angle `alpha`.
  int direction_index(double alpha) const;
  /// Same as direction_index(atan2(d.y, d.x)), without the atan2 in the
  /// common case.
  int direction_index(Point d) const;
  double direction_angle(int j) const;

 private:
  int directions_ = 0;
  std::size_t n_ = 0;
  double tolerance_ = 0.0;
  std::vector<std::uint32_t> v_;
  std::vector<std::uint32_t> w_;
};

/// True (pass) when part first..last has no zigzag along the tabulated
/// direction closest to `segment_angle`.
bool zigzag_test(const ZigzagTables& zt, std::size_t first, std::size_t last,
                 double segment_angle);

/// True when part first..last zigzags along every tabulated direction.
bool any_direction_reject(const ZigzagTables& zt, std::size_t first, std::size_t last);

}  // namespace polymin
