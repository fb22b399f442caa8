#ifndef WCHAR_H
#define WCHAR_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result codes shared by all functions.
 */
typedef enum WcharStatus {
  WCHAR_STATUS_OK = 0,
  /*
   A required pointer argument was null.
   */
  WCHAR_STATUS_NULL_ARGUMENT = 1,
  /*
   Invalid input or unmet precondition (bad partition, not admissible, ...).
   */
  WCHAR_STATUS_PRECONDITION = 2,
  /*
   An internal consistency audit failed.
   */
  WCHAR_STATUS_AUDIT = 3,
  /*
   A Rust panic was caught at the boundary.
   */
  WCHAR_STATUS_PANIC = 4,
  /*
   The caller's buffer is too small; the required size was reported.
   */
  WCHAR_STATUS_BUFFER_TOO_SMALL = 5,
} WcharStatus;

/*
 Principal admissible weights at one level, flagged for one partition.
 */
typedef struct WcharAdmissibleSet WcharAdmissibleSet;

/*
 A truncated Euler-Poincare character.
 */
typedef struct WcharCharacter WcharCharacter;

/*
 Good grading of a partition.
 */
typedef struct WcharGrading WcharGrading;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failure on this thread (empty after a success).
 The pointer stays valid until the next call on the same thread.
 */
const char *wchar_last_error(void);

/*
 Library version as a static NUL-terminated string.
 */
const char *wchar_version(void);

/*
 Releases a string returned by this library.

 # Safety
 `s` must be null or a pointer returned by a `_json` function, not yet freed.
 */
void wchar_string_free(char *s);

/*
 Builds the good grading of `partition` (e.g. `"2,2"`).

 # Safety
 `partition` must be a NUL-terminated string and `out` a valid pointer.
 */
enum WcharStatus wchar_grading_new(const char *partition, struct WcharGrading **out);

/*
 `d_chi`, the number of negative-degree roots.

 # Safety
 `g` must be a live handle and `out` a valid pointer.
 */
enum WcharStatus wchar_grading_dchi(const struct WcharGrading *g, size_t *out);

/*
 Grading data as JSON; free the result with [`wchar_string_free`].

 # Safety
 `g` must be a live handle and `out` a valid pointer.
 */
enum WcharStatus wchar_grading_json(const struct WcharGrading *g, char **out);

/*
 # Safety
 `g` must be null or a handle from [`wchar_grading_new`], not yet freed.
 */
void wchar_grading_free(struct WcharGrading *g);

/*
 Enumerates principal admissible weights at `k + n = p / q` and flags them
 for `partition`.

 # Safety
 `partition` must be a NUL-terminated string and `out` a valid pointer.
 */
enum WcharStatus wchar_admissible_new(const char *partition,
                                      int64_t p,
                                      int64_t q,
                                      struct WcharAdmissibleSet **out);

/*
 Sizes of the admissible set, `M~_k`, `M_k` and the number of classes.
 Any out pointer may be null.

 # Safety
 `set` must be a live handle; non-null out pointers must be valid.
 */
enum WcharStatus wchar_admissible_counts(const struct WcharAdmissibleSet *set,
                                         size_t *total,
                                         size_t *mtilde,
                                         size_t *mk,
                                         size_t *classes);

/*
 The admissible set as JSON; free the result with [`wchar_string_free`].

 # Safety
 `set` must be a live handle and `out` a valid pointer.
 */
enum WcharStatus wchar_admissible_json(const struct WcharAdmissibleSet *set, char **out);

/*
 # Safety
 `set` must be null or a handle from [`wchar_admissible_new`], not yet freed.
 */
void wchar_admissible_free(struct WcharAdmissibleSet *set);

/*
 Euler-Poincare character for the weight with
 `q <lambda_bar + rho_bar, alpha_i^vee> = weight[i]` (comma separated rationals).

 # Safety
 String arguments must be NUL-terminated and `out` a valid pointer.
 */
enum WcharStatus wchar_character_new(const char *partition,
                                     int64_t p,
                                     int64_t q,
                                     const char *weight,
                                     uint32_t order,
                                     uint32_t cone_depth,
                                     struct WcharCharacter **out);

/*
 Coefficients of `q^0 .. q^order`, summed over restricted weights, into
 `buf[0..len]`. `written` receives `order + 1` in every case.

 # Safety
 `ch` must be a live handle, `buf` valid for `len` values.
 */
enum WcharStatus wchar_character_q_series(const struct WcharCharacter *ch,
                                          int64_t *buf,
                                          size_t len,
                                          size_t *written);

/*
 The character as JSON; free the result with [`wchar_string_free`].

 # Safety
 `ch` must be a live handle and `out` a valid pointer.
 */
enum WcharStatus wchar_character_json(const struct WcharCharacter *ch, char **out);

/*
 # Safety
 `ch` must be null or a handle from [`wchar_character_new`], not yet freed.
 */
void wchar_character_free(struct WcharCharacter *ch);

/*
 Writes the exceptional partition for `(n, p, q)` (e.g. `"2,2"`) into `buf`.
 `needed` (may be null) receives the size including the terminating NUL.

 # Safety
 `buf` must be valid for `len` bytes.
 */
enum WcharStatus wchar_exceptional_partition(size_t n,
                                             int64_t p,
                                             int64_t q,
                                             char *buf,
                                             size_t len,
                                             size_t *needed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WCHAR_H */
