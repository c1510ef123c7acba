#ifndef NONNEST_H
#define NONNEST_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result codes shared by every function.
 */
typedef enum NonnestStatus {
  NONNEST_STATUS_OK = 0,
  NONNEST_STATUS_NULL_POINTER = 1,
  NONNEST_STATUS_INVALID_UTF8 = 2,
  NONNEST_STATUS_PARSE = 3,
  NONNEST_STATUS_PRECONDITION = 4,
  NONNEST_STATUS_INTERNAL = 5,
} NonnestStatus;

/**
 * Opaque set of patterns.
 */
typedef struct NonnestPatternSet NonnestPatternSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *nonnest_last_error_message(void);

/**
 * Bumped whenever results may change.
 */
uint32_t nonnest_engine_version(void);

/**
 * Frees a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void nonnest_string_free(char *s);

/**
 * Parses a comma-separated pattern list such as `"123,231"` (`""` is the empty set).
 *
 * # Safety
 * `text` must be a valid C string; `out` must be writable.
 */
enum NonnestStatus nonnest_pattern_set_new(const char *text, struct NonnestPatternSet **out);

/**
 * # Safety
 * `set` must come from [`nonnest_pattern_set_new`] and not have been freed. NULL is ignored.
 */
void nonnest_pattern_set_free(struct NonnestPatternSet *set);

/**
 * Number of distinct patterns after standardization; 0 for NULL.
 *
 * # Safety
 * `set` must be NULL or a live handle.
 */
uintptr_t nonnest_pattern_set_len(const struct NonnestPatternSet *set);

/**
 * Number of nonnesting permutations of size `n` avoiding `set`, as a
 * decimal string in `*out`.
 *
 * # Safety
 * `set` must be a live handle; `out` must be writable.
 */
enum NonnestStatus nonnest_count_avoiders(const struct NonnestPatternSet *set,
                                          uintptr_t n,
                                          char **out);

/**
 * Whether `word` (e.g. `"1 2 1 2"` or `"1212"`) avoids 1221 and 2112.
 * Fails if some value does not appear exactly twice.
 *
 * # Safety
 * `word` must be a valid C string; `out` must be writable.
 */
enum NonnestStatus nonnest_is_nonnesting(const char *word, bool *out);

/**
 * Whether `word` contains `pattern`.
 *
 * # Safety
 * Both strings must be valid C strings; `out` must be writable.
 */
enum NonnestStatus nonnest_contains_pattern(const char *word, const char *pattern, bool *out);

/**
 * Verifies the proven catalog entries matching `filter` (substring of anchor
 * or OEIS id; `""` for all) up to `n_max`. Writes a JSON array of reports
 * to `*json_out` and whether every report passed to `*passed`.
 *
 * # Safety
 * `filter` must be a valid C string; both out-pointers must be writable.
 */
enum NonnestStatus nonnest_catalog_verify(const char *filter,
                                          uintptr_t n_max,
                                          char **json_out,
                                          bool *passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NONNEST_H */
