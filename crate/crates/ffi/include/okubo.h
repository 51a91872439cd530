#ifndef OKUBO_H
#define OKUBO_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum OkuboStatus {
  OKUBO_STATUS_OK = 0,
  OKUBO_STATUS_NULL_POINTER = 1,
  OKUBO_STATUS_INVALID_UTF8 = 2,
  OKUBO_STATUS_INVALID_FIELD = 3,
  OKUBO_STATUS_PARSE_ERROR = 4,
  OKUBO_STATUS_INVALID_ALGEBRA = 5,
  OKUBO_STATUS_MIXED_ALGEBRAS = 6,
  OKUBO_STATUS_NOT_ZERO_DIVISOR = 7,
  OKUBO_STATUS_INFINITE_FIELD = 8,
  OKUBO_STATUS_INCOMPATIBLE_SUITE = 9,
  OKUBO_STATUS_GRAPH_TOO_LARGE = 10,
  OKUBO_STATUS_PANIC = 11,
} OkuboStatus;

typedef enum OkuboClass {
  OKUBO_CLASS_TYPE_A = 0,
  OKUBO_CLASS_TYPE_B = 1,
  OKUBO_CLASS_TYPE_C = 2,
} OkuboClass;

/**
 * An Okubo algebra over a finite or rational function field.
 */
typedef struct OkuboAlgebraHandle OkuboAlgebraHandle;

/**
 * An element, tied to the algebra it was created in.
 */
typedef struct OkuboElementHandle OkuboElementHandle;

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *okubo_last_error(void);

/**
 * Library version, a static string.
 */
const char *okubo_version(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void okubo_string_free(char *s);

/**
 * Creates `O_{α,β}` over `field` (same syntax as the command line, e.g. "gf4", "3(t)").
 *
 * # Safety
 * String arguments must be nul-terminated; `out` must be writable.
 */
enum OkuboStatus okubo_algebra_new(const char *field,
                                   const char *alpha,
                                   const char *beta,
                                   struct OkuboAlgebraHandle **out);

/**
 * Releases an algebra. Elements created from it stay valid but can only be freed.
 *
 * # Safety
 * `alg` must come from [`okubo_algebra_new`] and not have been freed.
 */
void okubo_algebra_free(struct OkuboAlgebraHandle *alg);

/**
 * Field, parameters, splitness and related facts, one `key: value` per line.
 *
 * # Safety
 * `alg` must be a live handle; `out` must be writable.
 */
enum OkuboStatus okubo_algebra_info(const struct OkuboAlgebraHandle *alg, char **out);

/**
 * Parses an element such as "z01 - z11" or "(z01 - z11)*(z01 - z11)".
 *
 * # Safety
 * `alg` must be a live handle, `src` nul-terminated, `out` writable.
 */
enum OkuboStatus okubo_element_parse(const struct OkuboAlgebraHandle *alg,
                                     const char *src,
                                     struct OkuboElementHandle **out);

/**
 * # Safety
 * `x` must come from this library and not have been freed.
 */
void okubo_element_free(struct OkuboElementHandle *x);

/**
 * The element in the form accepted by [`okubo_element_parse`].
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum OkuboStatus okubo_element_to_string(const struct OkuboAlgebraHandle *alg,
                                         const struct OkuboElementHandle *x,
                                         char **out);

/**
 * Coordinates as `{c10, c20, c01, c02, c11, c22, c12, c21}`.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum OkuboStatus okubo_element_coordinates(const struct OkuboAlgebraHandle *alg,
                                           const struct OkuboElementHandle *x,
                                           char **out);

/**
 * `x * y`.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum OkuboStatus okubo_mul(const struct OkuboAlgebraHandle *alg,
                           const struct OkuboElementHandle *x,
                           const struct OkuboElementHandle *y,
                           struct OkuboElementHandle **out);

/**
 * The polar form `n(x, y)`, printed in the field's syntax.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum OkuboStatus okubo_bilin(const struct OkuboAlgebraHandle *alg,
                             const struct OkuboElementHandle *x,
                             const struct OkuboElementHandle *y,
                             char **out);

/**
 * The quadratic norm `n(x)`, printed in the field's syntax.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum OkuboStatus okubo_qnorm(const struct OkuboAlgebraHandle *alg,
                             const struct OkuboElementHandle *x,
                             char **out);

/**
 * Class of a zero divisor; `NotZeroDivisor` otherwise.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum OkuboStatus okubo_classify(const struct OkuboAlgebraHandle *alg,
                                const struct OkuboElementHandle *x,
                                enum OkuboClass *out);

/**
 * Runs a verification suite by its command-line name ("identities", "all", ...).
 * `passed` receives the verdict and `report` the text the command line prints.
 * `exact_limit` 0 selects the default.
 *
 * # Safety
 * `alg` must be live, `suite` nul-terminated, `passed` and `report` writable.
 */
enum OkuboStatus okubo_verify(const struct OkuboAlgebraHandle *alg,
                              const char *suite,
                              uint64_t seed,
                              size_t exact_limit,
                              bool *passed,
                              char **report);

/**
 * The JSON report of the orthogonality graph (finite fields only).
 * `exact_limit` 0 selects the default.
 *
 * # Safety
 * `alg` must be live; `out` must be writable.
 */
enum OkuboStatus okubo_graph_report(const struct OkuboAlgebraHandle *alg,
                                    uint64_t seed,
                                    size_t exact_limit,
                                    char **out);

#endif  /* OKUBO_H */
