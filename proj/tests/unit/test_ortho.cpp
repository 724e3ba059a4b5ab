#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "polymin/errors.hpp"
#include "polymin/ortho.hpp"

using namespace polymin;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

OrthoConfig ortho(double t, int dirs = 4) {
  OrthoConfig c;
  c.tolerance = t;
  c.directions = dirs;
  return c;
}

bool aligned(const CompressedResult& r, double rotation, int dirs) {
  const auto v = r.polyline.vertices();
  for (std::size_t i = 1; i < v.size(); ++i) {
    const Point d = rotate(v[i] - v[i - 1], -rotation);
    const double len = norm(d);
    if (len == 0.0) continue;
    const double a = std::atan2(d.y, d.x) / (2.0 * std::numbers::pi / dirs);
    if (std::abs(a - std::round(a)) > 1e-9) return false;
  }
  return true;
}

void check_sound(const Polyline& src, const CompressedResult& r, const OrthoConfig& cfg) {
  const auto s = oracle::soundness(src.path(), r.polyline.vertices(), cfg.tolerance / 16.0);
  CHECK(s.source_to_result <= cfg.tolerance * (1.0 + cfg.q) + 1e-9);
  CHECK(s.vertex_to_source <= cfg.tolerance + 1e-9);
}

}  // namespace

TEST_SUITE("ortho") {
  TEST_CASE("direction check") {
    CHECK(direction_check(Point{2, 0}, 0.0));
    CHECK(direction_check(Point{0, 0}, 1.234));
    CHECK_FALSE(direction_check(Point{1, 1}, 0.0));
    CHECK_FALSE(direction_check(Point{-2, 0}, 0.0));
    CHECK(direction_check(Point{0, 3}, std::numbers::pi / 2));
    CHECK(direction_check(LatticeCoord{3, 0}, 0, 4));
    CHECK(direction_check(LatticeCoord{0, 0}, 2, 4));
    CHECK(direction_check(LatticeCoord{-2, -2}, 5, 8));
    CHECK_FALSE(direction_check(LatticeCoord{2, 1}, 1, 8));
  }

  TEST_CASE("transitions") {
    CHECK_FALSE(transition_allowed(0, 2, 4, false));
    CHECK_FALSE(transition_allowed(1, 3, 4, false));
    CHECK(transition_allowed(0, 1, 4, false));
    CHECK(transition_allowed(0, 0, 4, false));
    CHECK_FALSE(transition_allowed(0, 3, 8, true));
    CHECK_FALSE(transition_allowed(0, 5, 8, true));
    CHECK(transition_allowed(0, 3, 8, false));
    CHECK(transition_allowed(0, 1, 8, true));
    CHECK(transition_allowed(0, 2, 8, true));
    CHECK_FALSE(transition_allowed(0, 4, 8, true));
  }

  TEST_CASE("staircase is already minimal") {
    const Polyline p(std::vector<Point>{{0, 0}, {1, 0}, {1, 1}, {2, 1}, {2, 2}});
    const OrthoConfig cfg = ortho(0.05);
    const auto r = solve_ortho(p, cfg, 0.0);
    CHECK(r.segment_count() == 4);
    CHECK(r.polyline.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) CHECK(distance(r.polyline[i], p[i]) < 0.05);
    CHECK(aligned(r, 0.0, 4));
    check_sound(p, r, cfg);
  }

  TEST_CASE("noisy axis-aligned rectangle") {
    const Polyline rect = fixture::rectangle(10, 6, 0, 0.25, 0.05, 2);
    const OrthoConfig cfg = ortho(0.5);
    const auto r = solve_ortho(rect, cfg, 0.0);
    CHECK(r.segment_count() == 4);
    CHECK(r.closed);
    CHECK(aligned(r, 0.0, 4));
    check_sound(rect, r, cfg);
  }

  TEST_CASE("rotated rectangle prefers its own rotation") {
    const Polyline rect = fixture::rectangle(10, 6, 20, 0.25, 0.05, 4);
    const OrthoConfig cfg = ortho(0.5);
    const auto at20 = solve_ortho(rect, cfg, 20 * kDeg);
    CHECK(at20.segment_count() == 4);
    CHECK(aligned(at20, 20 * kDeg, 4));
    const auto at0 = solve_ortho(rect, cfg, 0.0);
    CHECK(at20.cost < at0.cost);
  }

  TEST_CASE("rotation search") {
    OrthoConfig cfg = ortho(0.5);
    const Polyline square = fixture::rectangle(8, 8, 0, 0.25, 0.02, 5);
    const auto r0 = rotation_search(square, cfg);
    const double deg = r0.rotation / kDeg;
    CHECK((deg <= 1.0 + 1e-9 || deg >= 89.0 - 1e-9));

    cfg.rotation_step_deg = 1.0;
    const Polyline rect = fixture::rectangle(10, 6, 33, 0.25, 0.05, 6);
    const auto r = rotation_search(rect, cfg);
    CHECK(std::abs(r.rotation / kDeg - 33.0) <= 1.0);
    CHECK(r.result.segment_count() == 4);
    CHECK(r.result.rotation == r.rotation);
  }

  TEST_CASE("45-degree mode on an octagon") {
    OrthoConfig cfg = ortho(0.5, 8);
    cfg.forbid_sharp = true;
    cfg.rotation_step_deg = 5.0;
    const Polyline oct = fixture::octagon(5, 0.25, 0.05, 3);
    const auto r = rotation_search(oct, cfg);
    CHECK(r.result.segment_count() == 8);
    CHECK(aligned(r.result, r.rotation, 8));
    check_sound(oct, r.result, cfg);
  }

  TEST_CASE("forbidding sharp turns changes a 135-degree corner") {
    // A 135-degree turn: right, then back up-left.
    const std::vector<Point> corners{{0, 0}, {6, 0}, {2, 4}};
    const Polyline p(fixture::sample(corners, 0.25));
    OrthoConfig free8 = ortho(0.3, 8);
    OrthoConfig strict8 = free8;
    strict8.forbid_sharp = true;
    const auto a = solve_ortho(p, free8, 0.0);
    const auto b = solve_ortho(p, strict8, 0.0);
    CHECK(a.segment_count() == 2);
    CHECK(b.segment_count() > 2);
    for (std::size_t i = 0; i + 1 < b.segment_directions.size(); ++i)
      CHECK(transition_allowed(b.segment_directions[i], b.segment_directions[i + 1], 8, true));
    check_sound(p, b, strict8);
  }

  TEST_CASE("unreachable diagonal jump") {
    const Polyline p(std::vector<Point>{{0, 0}, {10, 10}});
    try {
      solve_ortho(p, ortho(0.1), 0.0);
      FAIL("expected NoSolution");
    } catch (const NoSolution& e) {
      REQUIRE(e.vertex().has_value());
      CHECK(*e.vertex() == 1);
    }
    // A 45 degree rotation makes the jump axis-aligned; a coarse sweep misses it.
    CHECK(rotation_search(p, ortho(0.1)).result.segment_count() == 1);
    OrthoConfig coarse = ortho(0.1);
    coarse.rotation_step_deg = 30.0;
    CHECK_THROWS_AS(rotation_search(p, coarse), NoSolution);
    OrthoConfig dense = ortho(0.1);
    dense.densify = 0.05;
    CHECK_NOTHROW(solve_ortho(p, dense, 0.0));
  }

  TEST_CASE("invalid orthogonal configuration") {
    const Polyline p(std::vector<Point>{{0, 0}, {1, 0}});
    CHECK_THROWS_AS(solve_ortho(p, ortho(0.1, 6), 0.0), InvalidParameter);
    OrthoConfig c = ortho(0.1);
    c.rotation_step_deg = 0.0;
    CHECK_THROWS_AS(rotation_search(p, c), InvalidParameter);
  }

  TEST_CASE("strip zero segments") {
    CompressedResult r;
    r.polyline = Polyline(std::vector<Point>{{0, 0}, {2, 0}, {2, 0}, {2, 3}});
    r.ranges = {{0, 3}, {3, 4}, {4, 7}};
    r.segment_directions = {0, 1, 1};
    r.cost = {3, 1.0};
    const auto s = strip_zero_segments(r);
    CHECK(s.polyline.size() == 3);
    CHECK(s.segment_count() == 2);
    CHECK(s.cost.segments == 2);
    CHECK(s.post_processed);
    CHECK(s.ranges.front().first == 0);
    CHECK(s.ranges.back().last == 7);

    CompressedResult clean;
    clean.polyline = Polyline(std::vector<Point>{{0, 0}, {2, 0}, {2, 3}});
    clean.ranges = {{0, 3}, {3, 7}};
    clean.segment_directions = {0, 1};
    clean.cost = {2, 1.0};
    const auto c = strip_zero_segments(clean);
    CHECK(c.polyline == clean.polyline);
    CHECK(c.ranges == clean.ranges);
  }

  TEST_CASE("result vertices are translation invariant") {
    const Polyline rect = fixture::rectangle(10, 6, 0, 0.25, 0.05, 2);
    std::vector<Point> moved;
    for (const Point& p : rect.vertices()) moved.push_back(p + Point{123.25, -77.5});
    const auto a = solve_ortho(rect, ortho(0.5), 0.0);
    const auto b = solve_ortho(Polyline(moved, true), ortho(0.5), 0.0);
    CHECK(a.segment_count() == b.segment_count());
  }
}
