#ifndef FINRING_H
#define FINRING_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FinringStatus {
  FINRING_STATUS_OK = 0,
  FINRING_STATUS_NULL_POINTER = 1,
  FINRING_STATUS_INVALID_UTF8 = 2,
  FINRING_STATUS_PARSE_ERROR = 3,
  FINRING_STATUS_EVAL_ERROR = 4,
  FINRING_STATUS_OUT_OF_RANGE = 5,
  FINRING_STATUS_CHECK_FAILED = 6,
  FINRING_STATUS_PANIC = 7,
} FinringStatus;

/**
 * Opaque ring handle.
 */
typedef struct FinringRing FinringRing;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses and evaluates a ring expression such as `"sdprod_alg(GF(2), GF(2))"`.
 *
 * # Safety
 * `expr` must be a NUL-terminated string; `out` must be writable.
 */
enum FinringStatus finring_ring_from_expr(const char *expr, struct FinringRing **out);

/**
 * Loads a ring from a JSON table document and verifies its axioms.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum FinringStatus finring_ring_from_json(const char *json, struct FinringRing **out);

/**
 * Releases a ring handle. Null is ignored.
 *
 * # Safety
 * `ring` must come from this library and not be used afterwards.
 */
void finring_ring_free(struct FinringRing *ring);

/**
 * Number of elements, or 0 for a null handle.
 *
 * # Safety
 * `ring` must be null or a live handle.
 */
size_t finring_ring_order(const struct FinringRing *ring);

/**
 * `*out = a + b`.
 *
 * # Safety
 * `ring` must be a live handle; `out` must be writable.
 */
enum FinringStatus finring_ring_add(const struct FinringRing *ring,
                                    size_t a,
                                    size_t b,
                                    size_t *out);

/**
 * `*out = a * b`.
 *
 * # Safety
 * `ring` must be a live handle; `out` must be writable.
 */
enum FinringStatus finring_ring_mul(const struct FinringRing *ring,
                                    size_t a,
                                    size_t b,
                                    size_t *out);

/**
 * Serializes the tables as a JSON ring document.
 *
 * # Safety
 * `ring` must be a live handle; `out` must be writable.
 */
enum FinringStatus finring_ring_to_json(const struct FinringRing *ring, char **out);

/**
 * Structure report (units, ideals, maximal ideals, subfields) as JSON.
 *
 * # Safety
 * `ring` must be a live handle; `out` must be writable.
 */
enum FinringStatus finring_analyze_json(const struct FinringRing *ring, char **out);

/**
 * Decides (★).
 *
 * # Safety
 * `ring` must be a live handle; `out` must be writable.
 */
enum FinringStatus finring_has_star(const struct FinringRing *ring, bool *out);

/**
 * Class (A)/(B) membership as JSON.
 *
 * # Safety
 * `ring` must be a live handle; `out` must be writable.
 */
enum FinringStatus finring_classify_json(const struct FinringRing *ring, char **out);

/**
 * Addition and multiplication tables in the CLI's text layout.
 *
 * # Safety
 * `ring` must be a live handle; `out` must be writable.
 */
enum FinringStatus finring_cayley(const struct FinringRing *ring, char **out);

/**
 * Runs the catalogue verification matrix. The JSON report is written to
 * `out` in every case; the status is `CHECK_FAILED` if any row fails.
 *
 * # Safety
 * `out` must be writable.
 */
enum FinringStatus finring_verify_paper(char **out);

/**
 * Message for the last failed call on this thread, or null. The pointer is
 * valid until the next call into this library on the same thread.
 */
const char *finring_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void finring_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FINRING_H */
