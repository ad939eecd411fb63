/* C interface to the rulekit dual-number line geometry library. */

#ifndef RULEKIT_H
#define RULEKIT_H

/* Generated by cbindgen from crates/ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible call.
 */
typedef enum {
  RK_STATUS_OK = 0,
  RK_STATUS_NULL_ARGUMENT = 1,
  RK_STATUS_UTF8 = 2,
  RK_STATUS_IO = 3,
  RK_STATUS_PARSE = 4,
  RK_STATUS_VALIDATION = 5,
  RK_STATUS_NUMERICAL = 6,
  RK_STATUS_SINGULAR = 7,
  RK_STATUS_INTERNAL = 8,
} RkStatus;

/**
 * Which frame line directs the surface.
 */
typedef enum {
  RK_KIND_TANGENT = 0,
  RK_KIND_PRINCIPAL_NORMAL = 1,
  RK_KIND_BINORMAL = 2,
} RkKind;

/**
 * Opaque curve-spec handle.
 */
typedef struct RkSpec RkSpec;

/**
 * Dual Frenet data at one parameter value. Vector fields are the real
 * direction parts; `*_moment` are the dual (moment) parts.
 */
typedef struct {
  double s;
  double speed;
  double speed_dual;
  double kappa;
  double kappa_dual;
  double tau;
  double tau_dual;
  double tangent[3];
  double tangent_moment[3];
  double normal[3];
  double normal_moment[3];
  double binormal[3];
  double binormal_moment[3];
} RkFrenetSample;

/**
 * Curvature of one surface point from both pipelines.
 */
typedef struct {
  double s;
  double v;
  double k_oracle;
  double h_half;
  double h_trace;
  double k_closed_form;
  double h_closed_form;
  double y2_norm;
  double position[3];
} RkCurvatureSample;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Loads a curve spec from a file. On success writes a handle to `out`;
 * release it with `rk_spec_free`.
 *
 * # Safety
 * `path` must be a valid NUL-terminated string and `out` a valid pointer.
 */
RkStatus rk_spec_load(const char *path, RkSpec **out);

/**
 * Parses a curve spec from text (same format as the spec files).
 *
 * # Safety
 * `text` must be a valid NUL-terminated string and `out` a valid pointer.
 */
RkStatus rk_spec_from_str(const char *text, RkSpec **out);

/**
 * Releases a spec handle. A null handle is a no-op.
 *
 * # Safety
 * `handle` must be null or a pointer from `rk_spec_load`/`rk_spec_from_str`
 * that has not been freed.
 */
void rk_spec_free(RkSpec *handle);

/**
 * Writes the parameter domain `[s0, s1]` of the spec.
 *
 * # Safety
 * All pointers must be valid.
 */
RkStatus rk_spec_domain(const RkSpec *handle, double *s0, double *s1);

/**
 * Evaluates the dual Frenet frame at parameter `s`.
 *
 * # Safety
 * `handle` and `out` must be valid pointers.
 */
RkStatus rk_frenet_eval(const RkSpec *handle, double s, RkFrenetSample *out);

/**
 * Evaluates Gaussian and mean curvature of the `kind` surface at `(s, v)`
 * by both pipelines.
 *
 * # Safety
 * `handle` and `out` must be valid pointers.
 */
RkStatus rk_curvature_eval(const RkSpec *handle,
                           RkKind kind,
                           double s,
                           double v,
                           RkCurvatureSample *out);

/**
 * Classifies the `kind` surface on an `s_count x v_count` grid over
 * `[v_min, v_max]` and returns the report as a JSON string in `out_json`.
 * Release the string with `rk_string_free`.
 *
 * # Safety
 * `handle` and `out_json` must be valid pointers.
 */
RkStatus rk_classify_json(const RkSpec *handle,
                          RkKind kind,
                          uintptr_t s_count,
                          double v_min,
                          double v_max,
                          uintptr_t v_count,
                          char **out_json);

/**
 * Releases a string returned by this library. A null pointer is a no-op.
 *
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void rk_string_free(char *s);

/**
 * Static description of a status code. Never needs freeing.
 */
const char *rk_status_message(RkStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RULEKIT_H */
