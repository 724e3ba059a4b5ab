// Acceptance suite: one PASS/FAIL line per criterion.
//   polymin_acceptance            run all criteria
//   polymin_acceptance 3 7        run the listed criteria only
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "polymin/baseline.hpp"
#include "polymin/bench.hpp"
#include "polymin/compressor.hpp"
#include "polymin/errors.hpp"
#include "polymin/generate.hpp"
#include "polymin/ortho.hpp"
#include "polymin/zigzag.hpp"

using namespace polymin;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<Point> closed_path(const Polyline& p) {
  const auto path = p.path();
  return {path.begin(), path.end()};
}

// ---------------------------------------------------------------------------
// Shared corpus: every free-mode instance the suite solves.

struct Instance {
  std::string name;
  Polyline poly;
  SolveConfig cfg;
};

SolveConfig with_tolerance(double t, double q = 0.3) {
  SolveConfig c;
  c.tolerance = t;
  c.q = q;
  return c;
}

std::vector<Instance> small_random_instances() {
  std::vector<Instance> out;
  for (std::uint64_t seed = 1; out.size() < 60; ++seed) {
    const std::size_t n = 3 + seed % 6;  // 3..8 vertices
    Polyline p = fixture::random_walk(n, 0.3, 1.6, 60.0, seed);
    out.push_back({fmt("small-%llu", static_cast<unsigned long long>(seed)), p,
                   with_tolerance(1.0, 0.5)});
  }
  return out;
}

std::vector<fixture::NoisyPiecewise> piecewise_fixtures() {
  std::vector<fixture::NoisyPiecewise> out;
  for (std::uint64_t seed = 1; seed <= 20; ++seed)
    out.push_back(fixture::noisy_piecewise(4 + seed % 5, 0.25, 0.1, 100 + seed));
  return out;
}

constexpr double kPiecewiseTolerance = 0.2;

std::vector<Instance> corpus() {
  std::vector<Instance> out = small_random_instances();
  for (std::uint64_t seed = 1; seed <= 20; ++seed)
    out.push_back({fmt("walk-%llu", static_cast<unsigned long long>(seed)),
                   fixture::random_walk(50 + 25 * (seed % 10), 0.1, 0.8, 45.0, 500 + seed),
                   with_tolerance(0.75)});
  for (std::uint64_t seed = 1; seed <= 3; ++seed)
    out.push_back({fmt("brownian-2000-%llu", static_cast<unsigned long long>(seed)),
                   generate_brownian(2000, 0.25, seed), with_tolerance(1.0)});
  for (std::uint64_t seed = 1; seed <= 5; ++seed)
    out.push_back({fmt("arc-%llu", static_cast<unsigned long long>(seed)),
                   generate_arc(1.0, 90.0, 200, 0.01, seed), with_tolerance(0.02)});
  const auto pw = piecewise_fixtures();
  for (std::size_t i = 0; i < pw.size(); ++i)
    out.push_back({fmt("piecewise-%zu", i), pw[i].noisy, with_tolerance(kPiecewiseTolerance)});
  out.push_back({"zigzag", fixture::zigzag(2.5, 0.25), with_tolerance(1.0)});
  out.push_back({"rectangle-closed", fixture::rectangle(10, 6, 20, 0.25, 0.05, 7), with_tolerance(0.5)});
  out.push_back({"octagon-closed", fixture::octagon(5, 0.25, 0.05, 8), with_tolerance(0.5)});
  return out;
}

CompressedResult solve_any(const Instance& in) {
  return in.poly.closed() ? solve_closed(in.poly, in.cfg) : solve(in.poly, in.cfg);
}

// ---------------------------------------------------------------------------

Outcome criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  int checked = 0;
  for (const Instance& in : small_random_instances()) {
    const auto pts = in.poly.vertices();
    const LatticeSpec lattice = make_lattice(in.cfg.tolerance, in.cfg.q, LatticeKind::Triangular);
    const CandidateSet cands = candidate_locations(in.poly, lattice, in.cfg.tolerance);
    const double t = in.cfg.tolerance;
    const int dirs = in.cfg.directions;
    const LexCost expect = oracle::exhaustive_optimum(
        pts, cands, [&](std::size_t k0, std::size_t j0, std::size_t k, std::size_t j) {
          return oracle::segment_admissible(pts, k0, k, cands.at(k0)[j0].position,
                                            cands.at(k)[j].position, t, dirs);
        });
    SolveConfig cfg = in.cfg;
    cfg.verify = false;
    CompressedResult got;
    try {
      got = solve(in.poly, cfg);
    } catch (const NoSolution&) {
      got.cost = LexCost::infinity();
    }
    ++checked;
    const bool same_segments = got.cost.segments == expect.segments;
    const bool same_sse =
        expect.is_infinite() ||
        std::abs(got.cost.sse - expect.sse) <= 1e-9 * std::max(1.0, std::abs(expect.sse));
    if (!same_segments || !same_sse) {
      o.pass = false;
      o.detail += fmt(" %s: dp (%llu, %.12g) vs exhaustive (%llu, %.12g);", in.name.c_str(),
                      static_cast<unsigned long long>(got.cost.segments), got.cost.sse,
                      static_cast<unsigned long long>(expect.segments), expect.sse);
    }
  }
  const double secs = seconds_since(t0);
  if (secs >= 60.0) o.pass = false;
  o.detail = fmt("%d polylines, N<=8, q=0.5, %.1fs", checked, secs) + o.detail;
  return o;
}

Outcome criterion2() {
  Outcome o;
  int instances = 0;
  double worst_ratio = 0.0;
  double worst_vertex = 0.0;
  auto audit = [&](const std::string& name, const Polyline& src, const CompressedResult& r,
                   double t, double q) {
    ++instances;
    const auto s = oracle::soundness(closed_path(src), r.polyline.vertices(), t / 16.0);
    worst_ratio = std::max(worst_ratio, s.source_to_result / t);
    worst_vertex = std::max(worst_vertex, s.vertex_to_source / t);
    if (s.source_to_result > t * (1.0 + q) + 1e-9 || s.vertex_to_source > t + 1e-9) {
      o.pass = false;
      o.detail += fmt(" %s: %.6g / %.6g;", name.c_str(), s.source_to_result, s.vertex_to_source);
    }
  };
  for (const Instance& in : corpus()) audit(in.name, in.poly, solve_any(in), in.cfg.tolerance, in.cfg.q);

  OrthoConfig oc;
  oc.tolerance = 0.5;
  const Polyline rect = fixture::rectangle(10, 6, 20, 0.25, 0.05, 7);
  audit("rectangle-ortho", rect, rotation_search(rect, oc).result, oc.tolerance, oc.q);
  const Polyline oct = fixture::octagon(5, 0.25, 0.05, 8);
  OrthoConfig o8 = oc;
  o8.directions = 8;
  o8.forbid_sharp = true;
  audit("octagon-diag45", oct, rotation_search(oct, o8).result, o8.tolerance, o8.q);
  const Polyline stairs({{0, 0}, {1, 0}, {1, 1}, {2, 1}, {2, 2}});
  OrthoConfig os;
  os.tolerance = 0.05;
  audit("staircase-ortho", stairs, solve_ortho(stairs, os, 0.0), os.tolerance, os.q);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Polyline walk = fixture::random_walk(80, 0.1, 0.6, 30.0, 900 + seed);
    OrthoConfig ow;
    ow.tolerance = 0.5;
    ow.rotation_step_deg = 5.0;
    audit(fmt("walk-ortho-%llu", static_cast<unsigned long long>(seed)), walk,
          rotation_search(walk, ow).result, ow.tolerance, ow.q);
  }

  o.detail = fmt("%d instances, worst source->result %.4fT, worst vertex->source %.4fT",
                 instances, worst_ratio, worst_vertex) + o.detail;
  return o;
}

Outcome criterion3() {
  Outcome o;
  double total = 0.0;
  double slowest = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Polyline p = generate_brownian(10000, 0.25, seed);
    const auto t0 = std::chrono::steady_clock::now();
    const CompressedResult r = solve(p, with_tolerance(1.0));
    slowest = std::max(slowest, seconds_since(t0));
    total += static_cast<double>(r.polyline.size());
  }
  const double mean = total / 5.0;
  o.pass = mean >= 140.0 && mean <= 290.0 && slowest < 60.0;
  o.detail = fmt("mean output vertices %.1f (reduction %.1fx), slowest instance %.1fs", mean,
                 10000.0 / mean, slowest);
  return o;
}

Outcome criterion4() {
  const std::vector<std::size_t> sizes{1000, 2000, 5000, 10000, 20000, 50000};
  const std::vector<std::uint64_t> seeds{1};
  const auto records = bench(sizes, with_tolerance(1.0), seeds);
  const double slope = loglog_slope(records);
  Outcome o;
  o.pass = slope >= 0.8 && slope <= 1.4;
  o.detail = fmt("log-log slope %.3f;", slope);
  for (const auto& r : records) o.detail += fmt(" N=%zu %.2fs", r.n, r.seconds);
  return o;
}

Outcome criterion5() {
  // Calibration: T on a uniform grid 0.0040..0.0200 (step 0.0005); the
  // calibrated tolerance is the median grid value that yields nine segments.
  const Polyline arc = generate_arc(1.0, 90.0, 200, 0.01, 42);
  std::vector<std::pair<double, std::size_t>> curve;
  for (int i = 0; i <= 32; ++i) {
    const double t = 0.004 + 0.0005 * i;
    curve.emplace_back(t, solve(arc, with_tolerance(t)).segment_count());
  }
  std::vector<double> nine;
  for (const auto& [t, n] : curve)
    if (n == 9) nine.push_back(t);
  double calibrated = 0.0;
  if (!nine.empty()) {
    calibrated = nine[(nine.size() - 1) / 2];
  } else {
    std::size_t best = 0;
    for (std::size_t i = 1; i < curve.size(); ++i)
      if (std::abs(static_cast<double>(curve[i].second) - 9.0) <
          std::abs(static_cast<double>(curve[best].second) - 9.0))
        best = i;
    calibrated = curve[best].first;
  }
  const CompressedResult r = solve(arc, with_tolerance(calibrated));
  const auto v = r.polyline.vertices();
  std::vector<double> lengths;
  for (std::size_t i = 1; i < v.size(); ++i) lengths.push_back(distance(v[i - 1], v[i]));
  double mean = 0.0;
  for (double l : lengths) mean += l;
  mean /= static_cast<double>(lengths.size());
  double var = 0.0;
  for (double l : lengths) var += (l - mean) * (l - mean);
  const double cv = std::sqrt(var / static_cast<double>(lengths.size())) / mean;

  Outcome o;
  const std::size_t segs = r.segment_count();
  o.pass = segs >= 8 && segs <= 10 && cv < 0.25;
  o.detail = fmt("calibrated T=%.4f, %zu segments, length CV %.3f; curve", calibrated, segs, cv);
  for (const auto& [t, n] : curve) o.detail += fmt(" %.4f:%zu", t, n);
  return o;
}

Outcome criterion6() {
  Outcome o;
  int wins_dp = 0;
  std::size_t ours_total = 0;
  std::size_t dp_total = 0;
  std::size_t gt_total = 0;
  const auto fixtures = piecewise_fixtures();
  for (std::size_t i = 0; i < fixtures.size(); ++i) {
    const auto& f = fixtures[i];
    const std::size_t ours = solve(f.noisy, with_tolerance(kPiecewiseTolerance)).polyline.size();
    const std::size_t dp = douglas_peucker(f.noisy, kPiecewiseTolerance).size();
    const std::size_t gt = f.truth.size();
    ours_total += ours;
    dp_total += dp;
    gt_total += gt;
    if (ours < dp) ++wins_dp;
    if (ours > dp || ours > gt) {
      o.pass = false;
      o.detail += fmt(" fixture %zu: ours %zu, dp %zu, truth %zu;", i, ours, dp, gt);
    }
  }
  o.detail = fmt("%zu fixtures, T=%.2f, vertices ours %zu / dp %zu / truth %zu, strictly fewer than dp on %d",
                 fixtures.size(), kPiecewiseTolerance, ours_total, dp_total, gt_total, wins_dp) +
             o.detail;
  return o;
}

Outcome criterion7() {
  const Polyline z = fixture::zigzag(2.5, 0.25);
  const double t = 1.0;
  SolveConfig full = with_tolerance(t);
  SolveConfig ablated = full;
  ablated.check_endpoints = false;
  ablated.check_zigzag = false;
  ablated.verify = false;
  const CompressedResult a = solve(z, full);
  const CompressedResult b = solve(z, ablated);
  const double dev_a = oracle::max_deviation(z.vertices(), a.polyline.vertices(), t / 16.0);
  const double dev_b = oracle::max_deviation(z.vertices(), b.polyline.vertices(), t / 16.0);
  const double limit = t * (1.0 + full.q) + 1e-9;
  Outcome o;
  o.pass = dev_a <= limit && b.segment_count() < a.segment_count() && dev_b > limit;
  o.detail = fmt("full checks: %zu segments, max deviation %.3fT; without endpoint+zigzag: %zu segments, max deviation %.3fT",
                 a.segment_count(), dev_a / t, b.segment_count(), dev_b / t);
  return o;
}

bool axis_aligned(Point v, double rotation) {
  const Point r = rotate(v, -rotation);
  const double len = norm(r);
  return len == 0.0 || std::abs(r.x) <= 1e-9 * len || std::abs(r.y) <= 1e-9 * len;
}

Outcome criterion8() {
  Outcome o;
  OrthoConfig oc;
  oc.tolerance = 0.5;
  const Polyline rect = fixture::rectangle(10, 6, 20, 0.25, 0.05, 7);
  const RotationResult rr = rotation_search(rect, oc);
  const double deg = std::fmod(rr.rotation / kDeg + 360.0, 90.0);
  const auto rv = rr.result.polyline.vertices();
  bool aligned = true;
  for (std::size_t i = 1; i < rv.size(); ++i) aligned = aligned && axis_aligned(rv[i] - rv[i - 1], rr.rotation);
  const bool rect_ok = std::abs(deg - 20.0) <= 1.0 && rr.result.segment_count() == 4 && aligned;

  OrthoConfig o8 = oc;
  o8.directions = 8;
  o8.forbid_sharp = true;
  const Polyline oct = fixture::octagon(5, 0.25, 0.05, 8);
  const RotationResult ro = rotation_search(oct, o8);
  const auto ov = ro.result.polyline.vertices();
  std::vector<Point> dirs;
  for (std::size_t i = 1; i < ov.size(); ++i)
    if (!(ov[i] == ov[i - 1])) dirs.push_back(ov[i] - ov[i - 1]);
  bool no_sharp = true;
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    const Point u = dirs[i];
    const Point w = dirs[(i + 1) % dirs.size()];
    const double turn = std::abs(std::atan2(cross(u, w), dot(u, w))) / kDeg;
    if (std::abs(turn - 135.0) < 1.0) no_sharp = false;
  }
  const bool oct_ok = ro.result.segment_count() == 8 && no_sharp;

  o.pass = rect_ok && oct_ok;
  o.detail = fmt("rectangle: rotation %.2f deg, %zu segments, axis-aligned %s; octagon: %zu segments, 135-degree turns %s",
                 deg, rr.result.segment_count(), aligned ? "yes" : "no",
                 ro.result.segment_count(), no_sharp ? "none" : "present");
  return o;
}

Outcome criterion9() {
  Outcome o;
  int instances = 0;
  double worst = 0.0;
  for (const Instance& in : corpus()) {
    SolveConfig on = in.cfg;
    SolveConfig off = in.cfg;
    off.prune = false;
    ++instances;
    const CompressedResult a = in.poly.closed() ? solve_closed(in.poly, on) : solve(in.poly, on);
    const CompressedResult b = in.poly.closed() ? solve_closed(in.poly, off) : solve(in.poly, off);
    const double rel = std::abs(a.cost.sse - b.cost.sse) / std::max(1e-300, std::abs(b.cost.sse));
    if (b.cost.sse != 0.0) worst = std::max(worst, rel);
    if (a.cost.segments != b.cost.segments || (b.cost.sse != 0.0 && rel > 1e-6)) {
      o.pass = false;
      o.detail += fmt(" %s: (%llu, %.9g) vs (%llu, %.9g);", in.name.c_str(),
                      static_cast<unsigned long long>(a.cost.segments), a.cost.sse,
                      static_cast<unsigned long long>(b.cost.segments), b.cost.sse);
    }
  }
  o.detail = fmt("%d instances, worst relative sse difference %.3g", instances, worst) + o.detail;
  return o;
}

Outcome criterion10() {
  Outcome o;
  long long entries = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng(seed * 7919);
    const std::size_t n = 20 + static_cast<std::size_t>(rng.uniform() * 81.0);  // 20..100
    const Polyline p = fixture::random_walk(n, 0.1, 1.5, seed % 2 ? 170.0 : 90.0, 3000 + seed);
    const double t = rng.uniform(0.1, 0.8);
    const int dirs = seed % 3 == 0 ? 16 : 64;
    const ZigzagTables zt(p, t, dirs);
    for (int j = 0; j < dirs; ++j)
      for (std::size_t i = 0; i < n; ++i, ++entries) {
        const std::uint32_t want = oracle::zigzag_v(p.vertices(), j, i, t, dirs);
        if (zt.v(j, i) != want) {
          if (o.pass) o.detail += fmt(" seed %llu j=%d i=%zu: %u vs %u;", static_cast<unsigned long long>(seed), j, i, zt.v(j, i), want);
          o.pass = false;
        }
      }
  }
  o.detail = fmt("20 polylines, %lld table entries compared", entries) + o.detail;
  return o;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "desk-scale optimality oracle", criterion1},
      {2, "tolerance soundness", criterion2},
      {3, "brownian reduction", criterion3},
      {4, "near-linear scaling", criterion4},
      {5, "arc reproduction", criterion5},
      {6, "baseline dominance", criterion6},
      {7, "zigzag behavioral contrast", criterion7},
      {8, "orthogonal mode", criterion8},
      {9, "pruning neutrality", criterion9},
      {10, "zigzag-table oracle", criterion10},
  };
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));

  int failures = 0;
  for (const Criterion& c : all) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s  %2d  %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
