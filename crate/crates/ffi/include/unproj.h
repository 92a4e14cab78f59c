#ifndef UNPROJ_H
#define UNPROJ_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Status codes. The first four match the exit codes of the `unproj` CLI.
 */
typedef enum UnprojStatus {
  UNPROJ_STATUS_OK = 0,
  UNPROJ_STATUS_VERIFICATION_FAILED = 1,
  UNPROJ_STATUS_INPUT_ERROR = 2,
  UNPROJ_STATUS_RESOURCE_LIMIT = 3,
  UNPROJ_STATUS_NULL_POINTER = 4,
  UNPROJ_STATUS_PANIC = 5,
} UnprojStatus;

/**
 * Opaque unprojection result.
 */
typedef struct UnprojResult UnprojResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *unproj_last_error(void);

/**
 * Library version, a static string.
 */
const char *unproj_version(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` is null or a string obtained from this library, not yet freed.
 */
void unproj_string_free(char *s);

/**
 * Builds an unprojection ideal from a JSON description (the input
 * format of `unproj unproject`). `kind` and `tname` may be null; `kind`
 * then comes from the input and `tname` from the input or defaults to
 * `T`. On success `*out` owns a new handle.
 *
 * # Safety
 * String arguments are null or NUL-terminated; `out` is valid for writes.
 */
enum UnprojStatus unproj_unproject(const char *input_json,
                                   const char *kind,
                                   const char *tname,
                                   struct UnprojResult **out);

/**
 * Releases a result handle. Null is ignored.
 *
 * # Safety
 * `r` is null or a handle from [`unproj_unproject`], not yet freed.
 */
void unproj_result_free(struct UnprojResult *r);

/**
 * Number of ideal generators; 0 for a null handle.
 *
 * # Safety
 * `r` is null or a live handle.
 */
size_t unproj_result_generator_count(const struct UnprojResult *r);

/**
 * Generator `i` as canonical text, or null if out of range. The string
 * is owned by the handle.
 *
 * # Safety
 * `r` is null or a live handle.
 */
const char *unproj_result_generator(const struct UnprojResult *r, size_t i);

/**
 * Number of `g` values (the coefficients of the new variable's equations).
 *
 * # Safety
 * `r` is null or a live handle.
 */
size_t unproj_result_g_count(const struct UnprojResult *r);

/**
 * `g_i` (0-based) as canonical text, or null if out of range. Owned by
 * the handle.
 *
 * # Safety
 * `r` is null or a live handle.
 */
const char *unproj_result_g(const struct UnprojResult *r, size_t i);

/**
 * The result as JSON, as printed by `unproj --json unproject`.
 *
 * # Safety
 * `r` is a live handle; `out` is valid for writes.
 */
enum UnprojStatus unproj_result_to_json(const struct UnprojResult *r, bool show_work, char **out);

/**
 * Pfaffian(s) of a skew matrix given as JSON (`vars`, `size`, `upper`).
 * `*out` receives `{"pfaffian": ...}` for even size and
 * `{"pfaffians": [...]}` for odd size.
 *
 * # Safety
 * `input_json` is NUL-terminated; `out` is valid for writes.
 */
enum UnprojStatus unproj_pfaffian_json(const char *input_json, char **out);

/**
 * Compares the ideals `left` and `right` of a JSON input (`vars`,
 * `left`, `right`, optional `tvar`). With `allow_sign_flip`, equality
 * after `tvar -> -tvar` on the right is accepted too. `*out` receives a
 * JSON report; the status is `UNPROJ_STATUS_VERIFICATION_FAILED` when the
 * ideals differ. `max_pairs` of 0 means the default ceiling.
 *
 * # Safety
 * `input_json` is NUL-terminated; `out` is valid for writes.
 */
enum UnprojStatus unproj_ideal_equal_json(const char *input_json,
                                          bool allow_sign_flip,
                                          size_t max_pairs,
                                          char **out);

/**
 * Runs the command-line interface on `argv` (without the program name).
 * Returns the CLI exit code and hands out its standard output and error
 * through `out_stdout` and `out_stderr`, either of which may be null.
 * Returns `UNPROJ_STATUS_NULL_POINTER` or `UNPROJ_STATUS_PANIC` as an
 * exit code if the call itself fails.
 *
 * # Safety
 * `argv` holds `argc` NUL-terminated strings; the out pointers are null
 * or valid for writes.
 */
int32_t unproj_cli_run(size_t argc, const char *const *argv, char **out_stdout, char **out_stderr);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* UNPROJ_H */
