#ifndef HGAUSS_H
#define HGAUSS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every call.
 */
typedef enum HgStatus {
  HG_STATUS_OK = 0,
  HG_STATUS_NULL_ARGUMENT = 1,
  HG_STATUS_INVALID_UTF8 = 2,
  HG_STATUS_USAGE = 3,
  HG_STATUS_INVALID_INPUT = 4,
  HG_STATUS_UNKNOWN_GENERATOR = 5,
  HG_STATUS_UNKNOWN_REFERENCE = 6,
  HG_STATUS_UNKNOWN_CATALOGUE = 7,
  HG_STATUS_PARAMETER_RANGE = 8,
  HG_STATUS_UNSUPPORTED = 9,
  HG_STATUS_WRONG_PRESENTATION = 10,
  HG_STATUS_PARSE = 11,
  HG_STATUS_CAP_EXCEEDED = 12,
  HG_STATUS_DEGREE_OVERFLOW = 13,
  HG_STATUS_PANIC = 14,
} HgStatus;

/**
 * Opaque handle to a parsed `.hga` workspace.
 */
typedef struct HgWorkspace HgWorkspace;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the next call.
 */
const char *hg_last_error(void);

/**
 * CLI exit code that corresponds to `status`: 0, 1 or 2.
 */
int hg_exit_code(enum HgStatus status);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and must not be used afterwards.
 */
void hg_string_free(char *s);

/**
 * An empty workspace. Never null.
 */
struct HgWorkspace *hg_workspace_new(void);

/**
 * Releases a workspace. Null is ignored.
 *
 * # Safety
 * `ws` must come from [`hg_workspace_new`] and must not be used afterwards.
 */
void hg_workspace_free(struct HgWorkspace *ws);

/**
 * Adds the items of `src` to `ws`. On failure `ws` is left unchanged.
 *
 * # Safety
 * `ws` must be a live workspace and `src` a NUL-terminated string.
 */
enum HgStatus hg_workspace_load(struct HgWorkspace *ws, const char *src);

/**
 * Canonical text of `ws`; parsing it again gives an equal workspace.
 *
 * # Safety
 * `ws` must be a live workspace and `out` writable.
 */
enum HgStatus hg_workspace_render(const struct HgWorkspace *ws, char **out);

/**
 * Runs one CLI command, for example `{"solve", "--algebra", "su_q2:1/2"}`, and
 * writes the JSON report to `out`. The program name is not part of `argv`.
 * `ws` may be null; `--file` arguments are loaded on top of it.
 *
 * # Safety
 * `argv` must hold `argc` NUL-terminated strings; `ws` is null or live; `out` writable.
 */
enum HgStatus hg_run(const struct HgWorkspace *ws,
                     const char *const *argv,
                     size_t argc,
                     char **out);

/**
 * Evaluates the Gaussian functional `functional` on `poly` with the Wick formula
 * and writes the exact value, such as `(1/2 + 3/4i)`, to `out`.
 *
 * # Safety
 * `ws` is null or live; string arguments NUL-terminated; `out` writable.
 */
enum HgStatus hg_wick_eval(const struct HgWorkspace *ws,
                           const char *functional,
                           const char *poly,
                           char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HGAUSS_H */
