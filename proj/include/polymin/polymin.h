/* C interface to the polymin polyline compression library.
 *
 * Every object is an opaque handle owned by the caller and released with the
 * matching *_free function. Functions return a pm_status; on failure the
 * message of the most recent error on the calling thread is available from
 * pm_last_error(). Strings returned through char** are released with
 * pm_string_free().
 */
#ifndef POLYMIN_H
#define POLYMIN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(POLYMIN_BUILDING)
#    define POLYMIN_API __declspec(dllexport)
#  else
#    define POLYMIN_API __declspec(dllimport)
#  endif
#else
#  define POLYMIN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pm_status {
  PM_OK = 0,
  PM_ERR_INVALID_ARGUMENT = 1,
  PM_ERR_PARSE = 2,
  PM_ERR_NO_SOLUTION = 3,
  PM_ERR_DEGENERATE = 4,
  PM_ERR_INDEX = 5,
  PM_ERR_INTERNAL = 6
} pm_status;

typedef enum pm_format { PM_FORMAT_CSV = 0, PM_FORMAT_WKT = 1, PM_FORMAT_GEOJSON = 2 } pm_format;

typedef enum pm_mode { PM_MODE_FREE = 0, PM_MODE_ORTHO = 1, PM_MODE_DIAG45 = 2 } pm_mode;

typedef struct pm_polyline pm_polyline;
typedef struct pm_document pm_document;
typedef struct pm_result pm_result;

typedef struct pm_compress_options {
  double tolerance;         /* > 0 */
  double q;                 /* lattice error as a fraction of the tolerance, (0, 1) */
  int directions;           /* zigzag table directions, >= 4 */
  int prune;                /* nonzero: skip ranges using the lower bounds */
  int endpoint_dirs;        /* 4 (rectangle) or 8 (octagon) */
  double densify;           /* split source segments longer than this; <= 0 disables */
  int closed;               /* nonzero: treat every input as closed */
  pm_mode mode;
  int forbid_sharp;         /* PM_MODE_DIAG45: forbid 135 degree turns */
  int strip_zero_segments;  /* orthogonal modes: drop zero-length segments */
  double rotation_step_deg; /* orthogonal modes: rotation sweep step */
  int dedup_candidates;     /* drop locations offered by both neighbours */
} pm_compress_options;

POLYMIN_API const char* pm_version(void);
POLYMIN_API const char* pm_last_error(void);
POLYMIN_API void pm_string_free(char* s);

/* Defaults: tolerance 1, q 0.3, 64 directions, pruning on, rectangle ends,
 * free mode, 1 degree rotation step. */
POLYMIN_API void pm_compress_options_init(pm_compress_options* opts);

/* Polylines. `xy` holds n interleaved x, y pairs. */
POLYMIN_API pm_status pm_polyline_create(const double* xy, size_t n, int closed,
                                         pm_polyline** out);
POLYMIN_API void pm_polyline_free(pm_polyline* p);
POLYMIN_API size_t pm_polyline_size(const pm_polyline* p);
POLYMIN_API int pm_polyline_is_closed(const pm_polyline* p);
/* Copies 2 * size doubles into out_xy. */
POLYMIN_API pm_status pm_polyline_coords(const pm_polyline* p, double* out_xy);

/* Documents. */
POLYMIN_API pm_status pm_document_create(pm_document** out);
POLYMIN_API void pm_document_free(pm_document* d);
POLYMIN_API pm_status pm_document_parse(const char* text, size_t len, pm_format fmt,
                                        pm_document** out);
POLYMIN_API pm_status pm_document_serialize(const pm_document* d, pm_format fmt, char** out);
POLYMIN_API size_t pm_document_count(const pm_document* d);
/* Returns a new polyline handle (copy). */
POLYMIN_API pm_status pm_document_get(const pm_document* d, size_t i, pm_polyline** out);
/* Borrowed string, valid until the document changes or is freed. */
POLYMIN_API const char* pm_document_id(const pm_document* d, size_t i);
/* `id` may be NULL for a positional id. */
POLYMIN_API pm_status pm_document_add(pm_document* d, const pm_polyline* p, const char* id);

/* Compression. */
POLYMIN_API pm_status pm_compress(const pm_polyline* p, const pm_compress_options* opts,
                                  pm_result** out);
POLYMIN_API void pm_result_free(pm_result* r);
POLYMIN_API pm_status pm_result_polyline(const pm_result* r, pm_polyline** out);
POLYMIN_API size_t pm_result_segments(const pm_result* r);
POLYMIN_API double pm_result_sse(const pm_result* r);
POLYMIN_API double pm_result_rotation_deg(const pm_result* r);

/* Baseline, preprocessing and generators. */
POLYMIN_API pm_status pm_douglas_peucker(const pm_polyline* p, double tolerance,
                                         pm_polyline** out);
POLYMIN_API pm_status pm_densify(const pm_polyline* p, double max_length, pm_polyline** out);
POLYMIN_API pm_status pm_generate_brownian(size_t n, double sigma, uint64_t seed,
                                           pm_polyline** out);
POLYMIN_API pm_status pm_generate_arc(double radius, double sweep_deg, size_t n,
                                      double noise_radius, uint64_t seed, pm_polyline** out);

/* SVG of source (blue) and result (red, may be NULL). When `candidates` is
 * non-NULL the free-mode candidate locations for those options are drawn. */
POLYMIN_API pm_status pm_render_svg(const pm_polyline* source, const pm_polyline* result,
                                    const pm_compress_options* candidates, char** out);

/* Times compression of Brownian polylines (sigma 0.25) for every size and
 * seed. Writes CSV records to *csv_out and, with two or more sizes, the
 * log-log slope of time against size to *slope_out (may be NULL). */
POLYMIN_API pm_status pm_bench(const size_t* sizes, size_t n_sizes, const uint64_t* seeds,
                               size_t n_seeds, const pm_compress_options* opts, char** csv_out,
                               double* slope_out);

#ifdef __cplusplus
}
#endif

#endif /* POLYMIN_H */
