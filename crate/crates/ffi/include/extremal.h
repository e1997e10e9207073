#ifndef EXTREMAL_H
#define EXTREMAL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every exported function.
typedef enum ExtStatus {
  EXT_STATUS_OK = 0,
  EXT_STATUS_NULL_POINTER = 1,
  EXT_STATUS_INVALID_UTF8 = 2,
  EXT_STATUS_INVALID_SPEC = 3,
  EXT_STATUS_INVALID_PARAMETER = 4,
  EXT_STATUS_CONTRACT_VIOLATION = 5,
  EXT_STATUS_OUT_OF_HORIZON = 6,
  EXT_STATUS_SIMULATION_FAILURE = 7,
  EXT_STATUS_UNDEFINED_DISTANCE = 8,
  EXT_STATUS_DEGENERATE_INPUT = 9,
  EXT_STATUS_STALE_EVENT = 10,
  EXT_STATUS_UNKNOWN_EXPERIMENT = 11,
  EXT_STATUS_MALFORMED_CONFIG = 12,
  EXT_STATUS_IO = 13,
  EXT_STATUS_BUFFER_TOO_SMALL = 14,
  EXT_STATUS_PANIC = 15,
} ExtStatus;

// Side of a majorant slope query, passed as `int`.
typedef enum ExtSide {
  EXT_SIDE_LEFT = 0,
  EXT_SIDE_RIGHT = 1,
} ExtSide;

// Opaque concave-majorant handle.
typedef struct ExtMajorant ExtMajorant;

// Opaque path handle.
typedef struct ExtPath ExtPath;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failure on this thread, or NULL. Valid until the next
// failing call on the same thread.
const char *ext_last_error_message(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void ext_string_free(char *s);

// Parses a path from its JSON form (`{"kind": "jump" | "grid" | "sampled", ...}`).
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum ExtStatus ext_path_from_json(const char *json, struct ExtPath **out);

// Serializes a path to JSON; free the result with [`ext_string_free`].
//
// # Safety
// `path` must be a live handle; `out` must be writable.
enum ExtStatus ext_path_to_json(const struct ExtPath *path, char **out);

// # Safety
// `path` must be NULL or a handle not yet freed.
void ext_path_free(struct ExtPath *path);

// Lévy path on `[t0, t1]` from a JSON measure. `epsilon > 0` truncates jumps
// below `epsilon`; `epsilon <= 0` requires a finite measure.
//
// # Safety
// `measure_json` must be a NUL-terminated string; `out` must be writable.
enum ExtStatus ext_simulate_levy(const char *measure_json,
                                 double epsilon,
                                 double t0,
                                 double t1,
                                 uint64_t seed,
                                 struct ExtPath **out);

// Brownian path on `steps` equal steps of `[t0, t1]`.
//
// # Safety
// `out` must be writable.
enum ExtStatus ext_simulate_brownian(double t0,
                                     double t1,
                                     size_t steps,
                                     uint64_t seed,
                                     struct ExtPath **out);

// Concave majorant of `X*`.
//
// # Safety
// `path` must be a live handle; `out` must be writable.
enum ExtStatus ext_majorant_of_path(const struct ExtPath *path, struct ExtMajorant **out);

// # Safety
// `m` must be NULL or a handle not yet freed.
void ext_majorant_free(struct ExtMajorant *m);

// Vertex abscissae and values. `len` receives the vertex count; when it
// exceeds `cap` nothing is copied and `EXT_STATUS_BUFFER_TOO_SMALL` is returned.
//
// # Safety
// `times` and `values` must hold `cap` doubles; `len` must be writable.
enum ExtStatus ext_majorant_vertices(const struct ExtMajorant *m,
                                     double *times,
                                     double *values,
                                     size_t cap,
                                     size_t *len);

// One-sided slope of the majorant at `a`; `side` is an [`ExtSide`] value.
//
// # Safety
// `m` must be a live handle; `out` must be writable.
enum ExtStatus ext_majorant_slope(const struct ExtMajorant *m, double a, int side, double *out);

// Extremal superior times (`inferior == 0`) or inferior times (otherwise).
// Buffer protocol as in [`ext_majorant_vertices`].
//
// # Safety
// `times` must hold `cap` doubles; `path` must be a live handle.
enum ExtStatus ext_extremal_times(const struct ExtPath *path,
                                  int inferior,
                                  double *times,
                                  size_t cap,
                                  size_t *len);

// Hausdorff distance between two sorted sets of reals.
//
// # Safety
// `a` and `b` must hold `na` and `nb` doubles; `out` must be writable.
enum ExtStatus ext_hausdorff(const double *a, size_t na, const double *b, size_t nb, double *out);

// Hopf–Cole potential `ψ(x, t)` for the initial potential `psi0` on a sorted x-grid.
//
// # Safety
// `xs` and `out` must hold `n` doubles; `psi0` must be a live handle.
enum ExtStatus ext_hopf_cole(const struct ExtPath *psi0,
                             double t,
                             const double *xs,
                             size_t n,
                             double *out);

// Runs `n` unit-spaced sticky particles and sets `agrees` to 1 when the final
// clumps match the majorant prediction.
//
// # Safety
// `velocities` must hold `n` doubles; `agrees` must be writable.
enum ExtStatus ext_sticky_verify(const double *velocities, size_t n, int *agrees);

// Runs one experiment config and returns its JSON report (free with
// [`ext_string_free`]). `passed` receives 1 when every verdict passes.
//
// # Safety
// `config_json` must be a NUL-terminated string; the outputs must be writable.
enum ExtStatus ext_run_experiment_json(const char *config_json,
                                       char **report_json_out,
                                       int *passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EXTREMAL_H */
