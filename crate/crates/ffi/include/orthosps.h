#ifndef ORTHOSPS_H
#define ORTHOSPS_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by every fallible entry point.
 */
typedef enum OrthospsStatus {
  ORTHOSPS_STATUS_OK = 0,
  ORTHOSPS_STATUS_NULL_POINTER = 1,
  ORTHOSPS_STATUS_INVALID_UTF8 = 2,
  ORTHOSPS_STATUS_INVALID_ARGUMENT = 3,
  ORTHOSPS_STATUS_SYNTAX = 4,
  /**
   * The instance violates one of the axioms or is malformed.
   */
  ORTHOSPS_STATUS_INVALID = 5,
  /**
   * A size limit would be exceeded.
   */
  ORTHOSPS_STATUS_TOO_LARGE = 6,
  ORTHOSPS_STATUS_INTERNAL = 7,
  ORTHOSPS_STATUS_PANIC = 8,
} OrthospsStatus;

/**
 * Opaque handle to a validated orthocomplemented state property system.
 */
typedef struct OrthospsInstance OrthospsInstance;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the most recent failure on this thread, or null if none.
 * The pointer stays valid until the next failing call on this thread.
 */
const char *orthosps_last_error_message(void);

/**
 * Parses and validates a JSON instance document.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a writable pointer.
 */
enum OrthospsStatus orthosps_parse(const char *json, struct OrthospsInstance **out);

/**
 * The Boolean lattice on `n` states.
 *
 * # Safety
 * `out` must be a writable pointer.
 */
enum OrthospsStatus orthosps_gen_boolean(size_t n, struct OrthospsInstance **out);

/**
 * The horizontal sum of `k` four-element Boolean blocks.
 *
 * # Safety
 * `out` must be a writable pointer.
 */
enum OrthospsStatus orthosps_gen_mo(size_t k, struct OrthospsInstance **out);

/**
 * Direct union of `len` instances with states shuffled by `seed`.
 *
 * # Safety
 * `parts` must point to `len` valid handles and `out` must be writable.
 */
enum OrthospsStatus orthosps_compose(const struct OrthospsInstance *const *parts,
                                     size_t len,
                                     uint64_t seed,
                                     struct OrthospsInstance **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `handle` must come from this library and not have been freed.
 */
void orthosps_free(struct OrthospsInstance *handle);

/**
 * Number of states, or 0 for a null handle.
 *
 * # Safety
 * `handle` must be null or a live handle.
 */
size_t orthosps_state_count(const struct OrthospsInstance *handle);

/**
 * Number of properties, or 0 for a null handle.
 *
 * # Safety
 * `handle` must be null or a live handle.
 */
size_t orthosps_property_count(const struct OrthospsInstance *handle);

/**
 * Number of classical properties.
 *
 * # Safety
 * `handle` must be a live handle and `out` writable.
 */
enum OrthospsStatus orthosps_classical_property_count(const struct OrthospsInstance *handle,
                                                      size_t *out);

/**
 * Number of classical states, which is also the number of components.
 *
 * # Safety
 * `handle` must be a live handle and `out` writable.
 */
enum OrthospsStatus orthosps_classical_state_count(const struct OrthospsInstance *handle,
                                                   size_t *out);

/**
 * Canonical JSON serialization. Release the result with
 * [`orthosps_string_free`].
 *
 * # Safety
 * `handle` must be a live handle and `out` writable.
 */
enum OrthospsStatus orthosps_serialize(const struct OrthospsInstance *handle, char **out);

/**
 * Runs the classical-structure checks, the decomposition identities and the
 * decomposition round trip with default sampling. `*passed` is set to 1 if
 * no counterexample was found and 0 otherwise.
 *
 * # Safety
 * `handle` must be a live handle and `passed` writable.
 */
enum OrthospsStatus orthosps_check(const struct OrthospsInstance *handle, int32_t *passed);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void orthosps_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ORTHOSPS_H */
