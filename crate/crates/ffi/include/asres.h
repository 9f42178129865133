#ifndef ASRES_H
#define ASRES_H

/* Generated by cbindgen from asres-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum {
  /**
   * Success.
   */
  ASRES_STATUS_T_OK = 0,
  /**
   * A required pointer argument was NULL.
   */
  ASRES_STATUS_T_NULL_ARGUMENT = 1,
  /**
   * The parameters violate the semigroup hypotheses (or a bad prime).
   */
  ASRES_STATUS_T_INVALID_PARAMS = 2,
  /**
   * Construction or verification failed.
   */
  ASRES_STATUS_T_CHECK_FAILED = 3,
  /**
   * A panic was caught at the boundary.
   */
  ASRES_STATUS_T_PANIC = 4,
} asres_status_t;

/**
 * Opaque handle to a built complex (cone or minimal resolution).
 */
typedef struct asres_complex_t asres_complex_t;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The most recent error message on this thread, or NULL if none.
 * Caller owns the string; free with `asres_string_free`.
 */
char *asres_last_error_message(void);

/**
 * Builds the mapping-cone resolution for the semigroup generated by
 * m0, m0+d, ..., m0+n*d. On success stores a new handle in `out`.
 */
asres_status_t asres_build_cone(int64_t m0, int64_t d, int64_t n, asres_complex_t **out);

/**
 * Prunes a cone handle to the minimal resolution; `complex` must be a
 * cone handle and stays valid.
 */
asres_status_t asres_minimalize(const asres_complex_t *complex, asres_complex_t **out);

/**
 * 0 for a cone handle, 1 for a minimal one, -1 on NULL.
 */
int asres_complex_kind(const asres_complex_t *complex);

/**
 * Number of homological positions (modules exist for 0..=length).
 */
int64_t asres_complex_length(const asres_complex_t *complex);

/**
 * Rank of the free module at position `s`, or -1 when out of range.
 */
int64_t asres_complex_rank(const asres_complex_t *complex, int64_t s);

/**
 * Canonical JSON export of the handle.
 */
asres_status_t asres_complex_to_json(const asres_complex_t *complex, char **out);

/**
 * Macaulay2 script for the handle (ring, differentials, asserts).
 */
asres_status_t asres_complex_to_cas(const asres_complex_t *complex, char **out);

/**
 * beta_s from the closed form, or -1 on invalid input.
 */
int64_t asres_betti(int64_t m0, int64_t d, int64_t n, int64_t s);

/**
 * Runs the full verification suite. `wmax <= 0` means the default
 * window; `prime = 0` means the default prime. The JSON report is stored
 * in `out_report` even when verification fails; the status is Ok only if
 * every check passed.
 */
asres_status_t asres_verify_json(int64_t m0,
                                 int64_t d,
                                 int64_t n,
                                 int64_t wmax,
                                 uint64_t prime,
                                 char **out_report);

/**
 * Releases a complex handle. NULL is a no-op.
 */
void asres_complex_free(asres_complex_t *complex);

/**
 * Releases a string returned by this library. NULL is a no-op.
 */
void asres_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* ASRES_H */
