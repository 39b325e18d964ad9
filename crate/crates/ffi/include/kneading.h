#ifndef KNEADING_H
#define KNEADING_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every function.
 */
typedef enum KnStatus {
  KN_STATUS_OK = 0,
  KN_STATUS_NULL_POINTER = 1,
  KN_STATUS_INVALID_UTF8 = 2,
  KN_STATUS_PARSE = 3,
  KN_STATUS_INVALID_COMPONENT = 4,
  KN_STATUS_POOL_TOO_SMALL = 5,
  KN_STATUS_VIOLATION = 6,
  KN_STATUS_IO = 7,
  KN_STATUS_PRECONDITION = 8,
  KN_STATUS_PANIC = 9,
} KnStatus;

/**
 * Opaque handle to a component pool.
 */
typedef struct KnPool KnPool;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failed call on this thread, or null. Valid until
 * the next call into the library from the same thread.
 */
const char *kn_last_error(void);

/**
 * Releases a string returned by the library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void kn_string_free(char *s);

/**
 * Enumerates all components of period `2..=max_period`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum KnStatus kn_pool_new(uint32_t max_period, struct KnPool **out);

/**
 * Loads a pool JSON file.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a valid pointer.
 */
enum KnStatus kn_pool_load(const char *path, struct KnPool **out);

/**
 * # Safety
 * `pool` must come from `kn_pool_new`/`kn_pool_load` and not have been freed.
 */
void kn_pool_free(struct KnPool *pool);

/**
 * # Safety
 * `pool` and `out` must be valid pointers.
 */
enum KnStatus kn_pool_len(const struct KnPool *pool, uintptr_t *out);

/**
 * # Safety
 * `pool` and `out` must be valid pointers.
 */
enum KnStatus kn_pool_max_period(const struct KnPool *pool, uint32_t *out);

/**
 * The pool as JSON.
 *
 * # Safety
 * `pool` and `out` must be valid pointers.
 */
enum KnStatus kn_pool_to_json(const struct KnPool *pool, char **out);

/**
 * `K(H)` of the pair, e.g. `"BABBA"`. The pair is validated locally only.
 *
 * # Safety
 * String arguments must be NUL-terminated; `out` must be valid.
 */
enum KnStatus kn_kneading(const char *theta_minus, const char *theta_plus, char **out);

/**
 * Conspicuous components and return times as JSON.
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum KnStatus kn_conspicuous_json(const struct KnPool *pool,
                                  const char *theta_minus,
                                  const char *theta_plus,
                                  char **out);

/**
 * Covering report and structural checks as JSON; `*passed` is 1 when
 * everything holds.
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum KnStatus kn_verify_json(const struct KnPool *pool,
                             const char *theta_minus,
                             const char *theta_plus,
                             char **out,
                             int *passed);

/**
 * First `m >= 1` with `σ^m(angle) ∈ Π₁(H)`, or `-1` when the angle is not in
 * Disc(H).
 *
 * # Safety
 * String arguments must be NUL-terminated; `first_entry` must be valid.
 */
enum KnStatus kn_disc_entry(const char *theta_minus,
                            const char *theta_plus,
                            const char *angle_str,
                            int64_t *first_entry);

/**
 * Marker chain of the angle as JSON (`null` off Disc(H)).
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum KnStatus kn_marker_json(const struct KnPool *pool,
                             const char *theta_minus,
                             const char *theta_plus,
                             const char *angle_str,
                             char **out);

/**
 * The four worked examples as text; the pool must reach period 6.
 *
 * # Safety
 * `pool` and `out` must be valid pointers.
 */
enum KnStatus kn_report_text(const struct KnPool *pool, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KNEADING_H */
