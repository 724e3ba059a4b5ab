#include "polymin/polymin.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <numbers>
#include <string>
#include <vector>

#include "polymin/baseline.hpp"
#include "polymin/bench.hpp"
#include "polymin/compressor.hpp"
#include "polymin/errors.hpp"
#include "polymin/generate.hpp"
#include "polymin/io.hpp"
#include "polymin/ortho.hpp"
#include "polymin/svg.hpp"

struct pm_polyline {
  polymin::Polyline value;
};

struct pm_document {
  polymin::PolylineDocument value;
};

struct pm_result {
  polymin::CompressedResult value;
};

namespace {

thread_local std::string g_last_error;

pm_status set_error(pm_status status, const char* what) {
  g_last_error = what;
  return status;
}

pm_status status_of(polymin::ErrorCode code) {
  using polymin::ErrorCode;
  switch (code) {
    case ErrorCode::ParseError:
      return PM_ERR_PARSE;
    case ErrorCode::NoSolution:
      return PM_ERR_NO_SOLUTION;
    case ErrorCode::DegenerateInput:
    case ErrorCode::DegenerateSegment:
      return PM_ERR_DEGENERATE;
    case ErrorCode::IndexOutOfRange:
      return PM_ERR_INDEX;
    case ErrorCode::CorruptTable:
      return PM_ERR_INTERNAL;
    case ErrorCode::InvalidParameter:
      return PM_ERR_INVALID_ARGUMENT;
  }
  return PM_ERR_INTERNAL;
}

template <class F>
pm_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return PM_OK;
  } catch (const polymin::Error& e) {
    return set_error(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(PM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(PM_ERR_INTERNAL, e.what());
  }
}

#define PM_REQUIRE(cond)                                                   \
  do {                                                                     \
    if (!(cond)) return set_error(PM_ERR_INVALID_ARGUMENT, #cond " failed"); \
  } while (0)

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

polymin::Format to_format(pm_format f) {
  switch (f) {
    case PM_FORMAT_CSV:
      return polymin::Format::Csv;
    case PM_FORMAT_WKT:
      return polymin::Format::Wkt;
    case PM_FORMAT_GEOJSON:
      return polymin::Format::GeoJson;
  }
  throw polymin::InvalidParameter("unknown format");
}

polymin::SolveConfig solve_config(const pm_compress_options& o) {
  polymin::SolveConfig cfg;
  cfg.tolerance = o.tolerance;
  cfg.q = o.q;
  cfg.directions = o.directions;
  cfg.prune = o.prune != 0;
  cfg.endpoint_dirs = o.endpoint_dirs;
  if (o.densify > 0.0) cfg.densify = o.densify;
  cfg.dedup_candidates = o.dedup_candidates != 0;
  return cfg;
}

polymin::OrthoConfig ortho_config(const pm_compress_options& o) {
  polymin::OrthoConfig cfg;
  cfg.directions = o.mode == PM_MODE_DIAG45 ? 8 : 4;
  cfg.tolerance = o.tolerance;
  cfg.q = o.q;
  cfg.forbid_sharp = o.forbid_sharp != 0;
  cfg.rotation_step_deg = o.rotation_step_deg;
  if (o.densify > 0.0) cfg.densify = o.densify;
  cfg.strip_zero_segments = o.strip_zero_segments != 0;
  return cfg;
}

polymin::CompressedResult compress(const polymin::Polyline& input, const pm_compress_options& o) {
  const polymin::Polyline poly =
      o.closed && !input.closed()
          ? polymin::Polyline(std::vector<polymin::Point>(input.vertices().begin(),
                                                          input.vertices().end()),
                              true)
          : input;
  if (o.mode == PM_MODE_FREE) {
    const auto cfg = solve_config(o);
    return poly.closed() ? polymin::solve_closed(poly, cfg) : polymin::solve(poly, cfg);
  }
  if (o.mode != PM_MODE_ORTHO && o.mode != PM_MODE_DIAG45)
    throw polymin::InvalidParameter("unknown mode");
  return polymin::rotation_search(poly, ortho_config(o)).result;
}

}  // namespace

extern "C" {

const char* pm_version(void) { return "0.1.0"; }

const char* pm_last_error(void) { return g_last_error.c_str(); }

void pm_string_free(char* s) { std::free(s); }

void pm_compress_options_init(pm_compress_options* o) {
  if (!o) return;
  *o = pm_compress_options{};
  o->tolerance = 1.0;
  o->q = 0.3;
  o->directions = 64;
  o->prune = 1;
  o->endpoint_dirs = 4;
  o->densify = 0.0;
  o->closed = 0;
  o->mode = PM_MODE_FREE;
  o->forbid_sharp = 0;
  o->strip_zero_segments = 0;
  o->rotation_step_deg = 1.0;
  o->dedup_candidates = 0;
}

pm_status pm_polyline_create(const double* xy, size_t n, int closed, pm_polyline** out) {
  PM_REQUIRE(out);
  PM_REQUIRE(xy || n == 0);
  return guarded([&] {
    std::vector<polymin::Point> pts(n);
    for (size_t i = 0; i < n; ++i) pts[i] = {xy[2 * i], xy[2 * i + 1]};
    *out = new pm_polyline{polymin::Polyline(std::move(pts), closed != 0)};
  });
}

void pm_polyline_free(pm_polyline* p) { delete p; }

size_t pm_polyline_size(const pm_polyline* p) { return p ? p->value.size() : 0; }

int pm_polyline_is_closed(const pm_polyline* p) { return p && p->value.closed() ? 1 : 0; }

pm_status pm_polyline_coords(const pm_polyline* p, double* out_xy) {
  PM_REQUIRE(p && out_xy);
  const auto v = p->value.vertices();
  for (size_t i = 0; i < v.size(); ++i) {
    out_xy[2 * i] = v[i].x;
    out_xy[2 * i + 1] = v[i].y;
  }
  return PM_OK;
}

pm_status pm_document_create(pm_document** out) {
  PM_REQUIRE(out);
  return guarded([&] { *out = new pm_document{}; });
}

void pm_document_free(pm_document* d) { delete d; }

pm_status pm_document_parse(const char* text, size_t len, pm_format fmt, pm_document** out) {
  PM_REQUIRE(out);
  PM_REQUIRE(text || len == 0);
  return guarded([&] {
    auto doc = polymin::parse(std::string_view(text ? text : "", len), to_format(fmt));
    *out = new pm_document{std::move(doc)};
  });
}

pm_status pm_document_serialize(const pm_document* d, pm_format fmt, char** out) {
  PM_REQUIRE(d && out);
  return guarded([&] { *out = copy_string(polymin::serialize(d->value, to_format(fmt))); });
}

size_t pm_document_count(const pm_document* d) { return d ? d->value.items.size() : 0; }

pm_status pm_document_get(const pm_document* d, size_t i, pm_polyline** out) {
  PM_REQUIRE(d && out);
  if (i >= d->value.items.size()) return set_error(PM_ERR_INDEX, "document index out of range");
  return guarded([&] { *out = new pm_polyline{d->value.items[i].polyline}; });
}

const char* pm_document_id(const pm_document* d, size_t i) {
  if (!d || i >= d->value.items.size()) return nullptr;
  return d->value.items[i].id.c_str();
}

pm_status pm_document_add(pm_document* d, const pm_polyline* p, const char* id) {
  PM_REQUIRE(d && p);
  return guarded([&] { d->value.add(p->value, id ? id : ""); });
}

pm_status pm_compress(const pm_polyline* p, const pm_compress_options* opts, pm_result** out) {
  PM_REQUIRE(p && out);
  pm_compress_options defaults;
  pm_compress_options_init(&defaults);
  const pm_compress_options& o = opts ? *opts : defaults;
  return guarded([&] { *out = new pm_result{compress(p->value, o)}; });
}

void pm_result_free(pm_result* r) { delete r; }

pm_status pm_result_polyline(const pm_result* r, pm_polyline** out) {
  PM_REQUIRE(r && out);
  return guarded([&] { *out = new pm_polyline{r->value.as_polyline()}; });
}

size_t pm_result_segments(const pm_result* r) { return r ? r->value.segment_count() : 0; }

double pm_result_sse(const pm_result* r) { return r ? r->value.cost.sse : 0.0; }

double pm_result_rotation_deg(const pm_result* r) {
  return r ? r->value.rotation * 180.0 / std::numbers::pi : 0.0;
}

pm_status pm_douglas_peucker(const pm_polyline* p, double tolerance, pm_polyline** out) {
  PM_REQUIRE(p && out);
  return guarded([&] { *out = new pm_polyline{polymin::douglas_peucker(p->value, tolerance)}; });
}

pm_status pm_densify(const pm_polyline* p, double max_length, pm_polyline** out) {
  PM_REQUIRE(p && out);
  return guarded([&] { *out = new pm_polyline{polymin::densify(p->value, max_length)}; });
}

pm_status pm_generate_brownian(size_t n, double sigma, uint64_t seed, pm_polyline** out) {
  PM_REQUIRE(out);
  return guarded([&] { *out = new pm_polyline{polymin::generate_brownian(n, sigma, seed)}; });
}

pm_status pm_generate_arc(double radius, double sweep_deg, size_t n, double noise_radius,
                          uint64_t seed, pm_polyline** out) {
  PM_REQUIRE(out);
  return guarded([&] {
    *out = new pm_polyline{polymin::generate_arc(radius, sweep_deg, n, noise_radius, seed)};
  });
}

pm_status pm_render_svg(const pm_polyline* source, const pm_polyline* result,
                        const pm_compress_options* candidates, char** out) {
  PM_REQUIRE(source && out);
  return guarded([&] {
    const polymin::Polyline& res = result ? result->value : source->value;
    if (candidates) {
      const auto spec = polymin::make_lattice(candidates->tolerance, candidates->q,
                                              polymin::LatticeKind::Triangular);
      const auto cands =
          polymin::candidate_locations(source->value, spec, candidates->tolerance);
      *out = copy_string(polymin::render_svg(source->value, res, &cands));
    } else {
      *out = copy_string(polymin::render_svg(source->value, res));
    }
  });
}

pm_status pm_bench(const size_t* sizes, size_t n_sizes, const uint64_t* seeds, size_t n_seeds,
                   const pm_compress_options* opts, char** csv_out, double* slope_out) {
  PM_REQUIRE(sizes && seeds && csv_out && n_sizes > 0 && n_seeds > 0);
  pm_compress_options defaults;
  pm_compress_options_init(&defaults);
  const pm_compress_options& o = opts ? *opts : defaults;
  return guarded([&] {
    const auto records = polymin::bench(std::span<const size_t>(sizes, n_sizes), solve_config(o),
                                        std::span<const uint64_t>(seeds, n_seeds));
    if (slope_out) *slope_out = n_sizes >= 2 ? polymin::loglog_slope(records) : NAN;
    *csv_out = copy_string(polymin::bench_csv(records));
  });
}

}  // extern "C"
