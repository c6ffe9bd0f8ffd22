#ifndef MOTZKIN_H
#define MOTZKIN_H

#pragma once

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result codes. Zero is success.
 */
typedef enum MzStatus {
  MZ_STATUS_OK = 0,
  MZ_STATUS_NULL_POINTER = 1,
  MZ_STATUS_INVALID_UTF8 = 2,
  MZ_STATUS_PARSE = 3,
  MZ_STATUS_GENERICITY = 4,
  MZ_STATUS_SHAPE = 5,
  MZ_STATUS_OUT_OF_RANGE = 6,
  MZ_STATUS_DOMAIN = 7,
  MZ_STATUS_PANIC = 8,
} MzStatus;

/**
 * An element of a tangle span with exact coefficients.
 */
typedef struct MzElem MzElem;

/**
 * A loop parameter D.
 */
typedef struct MzParam MzParam;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *mz_last_error(void);

/**
 * # Safety
 * `s` must be null or a pointer obtained from this library that has not been freed.
 */
void mz_string_free(char *s);

/**
 * Parses `4`, `7/2` or `cos:5`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a writable pointer.
 */
enum MzStatus mz_param_parse(const char *text, struct MzParam **out);

/**
 * # Safety
 * `p` must be null or a handle from [`mz_param_parse`] that has not been freed.
 */
void mz_param_free(struct MzParam *p);

/**
 * The k-th Motzkin number in decimal.
 *
 * # Safety
 * `out` must be a writable pointer; the string is released with [`mz_string_free`].
 */
enum MzStatus mz_count_motzkin(uintptr_t k, char **out);

/**
 * Rank of the trace form on tangles with j boundary points.
 *
 * # Safety
 * `p` must be a live parameter handle and `out` a writable pointer.
 */
enum MzStatus mz_gns_dim(const struct MzParam *p, uintptr_t j, uintptr_t *out);

/**
 * Parses a word such as `2*e1 + r1*l1` in M_n.
 *
 * # Safety
 * `p` must be a live parameter handle, `word` a NUL-terminated string and `out` writable.
 */
enum MzStatus mz_elem_parse(const struct MzParam *p,
                            const char *word,
                            uintptr_t n,
                            struct MzElem **out);

/**
 * The idempotent g_k.
 *
 * # Safety
 * `p` must be a live parameter handle and `out` writable.
 */
enum MzStatus mz_jw(const struct MzParam *p, uintptr_t k, struct MzElem **out);

/**
 * # Safety
 * `a`, `b` must be live element handles and `out` writable.
 */
enum MzStatus mz_elem_mul(const struct MzElem *a, const struct MzElem *b, struct MzElem **out);

/**
 * # Safety
 * `a`, `b` must be live element handles and `out` writable.
 */
enum MzStatus mz_elem_equal(const struct MzElem *a, const struct MzElem *b, bool *out);

/**
 * Normalized trace, rendered as text.
 *
 * # Safety
 * `x` must be a live element handle and `out` writable.
 */
enum MzStatus mz_elem_trace(const struct MzElem *x, char **out);

/**
 * # Safety
 * `x` must be a live element handle and `out` writable.
 */
enum MzStatus mz_elem_to_json(const struct MzElem *x, char **out);

/**
 * # Safety
 * `x` must be null or a handle from this library that has not been freed.
 */
void mz_elem_free(struct MzElem *x);

/**
 * Fuses (k,i) with (l,j) and returns the labels as JSON `[[k,i],...]`.
 *
 * # Safety
 * `p` must be a live parameter handle and `out` writable.
 */
enum MzStatus mz_fuse(const struct MzParam *p,
                      uintptr_t k,
                      uintptr_t i,
                      uintptr_t l,
                      uintptr_t j,
                      char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MOTZKIN_H */
