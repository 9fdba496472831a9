#ifndef KINJ_H
#define KINJ_H

/* Generated by cbindgen from kinj-ffi; edit the Rust source instead. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call. Anything other than `Ok` leaves a
 * message readable through `kinj_last_error`.
 */
typedef enum KinjStatus {
  KINJ_STATUS_OK = 0,
  KINJ_STATUS_NULL_ARGUMENT = 1,
  KINJ_STATUS_INVALID_UTF8 = 2,
  KINJ_STATUS_PARSE_ERROR = 3,
  KINJ_STATUS_DOMAIN_ERROR = 4,
  KINJ_STATUS_PANICKED = 5,
} KinjStatus;

/**
 * Opaque handle owning the cyclic algebra, the scalar field, and the last
 * error message. Create with `kinj_context_new`, release with
 * `kinj_context_free`. A context is not thread-safe; share one per thread.
 */
typedef struct KinjContext KinjContext;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Create a context for the cyclic algebra on `n` vertices. `field_spec`
 * is `"rational"` or `"fp:<prime>"`; a null pointer selects rationals.
 * Returns null when `n` is zero or the field spec is invalid.
 *
 * # Safety
 * `field_spec` must be null or point to a NUL-terminated string.
 */
struct KinjContext *kinj_context_new(uint64_t n, const char *field_spec);

/**
 * Release a context. Null is ignored.
 *
 * # Safety
 * `ctx` must be null or a pointer returned by `kinj_context_new` that has
 * not been freed yet.
 */
void kinj_context_free(struct KinjContext *ctx);

/**
 * Message for the most recent failure on this context; empty when the
 * last call succeeded. The pointer is owned by the context and is valid
 * until the next call on it.
 *
 * # Safety
 * `ctx` must be null or a live pointer from `kinj_context_new`.
 */
const char *kinj_last_error(const struct KinjContext *ctx);

/**
 * Classify a complex given as JSON. On success writes a string like
 * `{"labels":[{"start":0,"end":1,"anchor":1,"mult":1}]}` to `out_json`.
 * The complex carries its own vertex count; the context supplies the
 * scalar field.
 *
 * # Safety
 * `ctx` must be live, `complex_json` NUL-terminated, and `out_json` must
 * point to writable pointer storage.
 */
enum KinjStatus kinj_classify_json(struct KinjContext *ctx,
                                   const char *complex_json,
                                   char **out_json);

/**
 * Stable dimension of the homotopy-category hom between two complexes
 * given as JSON. `max_window` caps the stabilization search; any value
 * below 1 selects the default (64). Writes either
 * `{"dim":...,"stableAt":...}` or
 * `{"unstable":true,"dimAtCutoff":...,"windowWidth":...}`.
 *
 * # Safety
 * `ctx` must be live, both JSON arguments NUL-terminated, and `out_json`
 * writable.
 */
enum KinjStatus kinj_hom_dim_json(struct KinjContext *ctx,
                                  const char *x_json,
                                  const char *y_json,
                                  int64_t max_window,
                                  char **out_json);

/**
 * Realize a label such as `"0:1:1"` (endpoints may be `-inf`/`+inf`) over
 * the window `[window_lo, window_hi]` and write the complex as JSON. The
 * label is interpreted over the context's algebra.
 *
 * # Safety
 * `ctx` must be live, `label` NUL-terminated, and `out_json` writable.
 */
enum KinjStatus kinj_realize_label_json(struct KinjContext *ctx,
                                        const char *label,
                                        int64_t window_lo,
                                        int64_t window_hi,
                                        char **out_json);

/**
 * Decompose a path-quiver representation into intervals. The document
 * must carry `"quiver"`, `"dims"`, and `"maps"` keys in the CLI's file
 * format; the output matches the CLI's `decompose-rep` subcommand.
 *
 * # Safety
 * `ctx` must be live, `rep_json` NUL-terminated, and `out_json` writable.
 */
enum KinjStatus kinj_decompose_rep_json(struct KinjContext *ctx,
                                        const char *rep_json,
                                        char **out_json);

/**
 * Release a string returned through an out-parameter. Null is ignored.
 *
 * # Safety
 * `s` must be null or a pointer produced by this library that has not
 * been freed yet.
 */
void kinj_string_free(char *s);

/**
 * Library version as a static NUL-terminated string.
 */
const char *kinj_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KINJ_H */
