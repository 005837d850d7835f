#ifndef BILLIARDS_H
#define BILLIARDS_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum BilliardsStatus {
  BILLIARDS_STATUS_OK = 0,
  BILLIARDS_STATUS_NULL_POINTER = 1,
  BILLIARDS_STATUS_INVALID_UTF8 = 2,
  BILLIARDS_STATUS_INVALID_INPUT = 3,
  BILLIARDS_STATUS_INVALID_PARTITION = 4,
  BILLIARDS_STATUS_ITERATION_CAP = 5,
  BILLIARDS_STATUS_PRECISION_LOSS = 6,
  BILLIARDS_STATUS_ARITHMETIC = 7,
  BILLIARDS_STATUS_INTERNAL = 8,
  BILLIARDS_STATUS_PANIC = 9,
} BilliardsStatus;

/**
 * Opaque partition handle.
 */
typedef struct BilliardsPartition BilliardsPartition;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread, or null. The pointer
 * stays valid until the next library call on the same thread.
 */
const char *billiards_last_error(void);

/**
 * Loads a built-in partition by name or a partition JSON file by path.
 *
 * # Safety
 * `source` must be a NUL-terminated string and `out` valid for a write.
 */
enum BilliardsStatus billiards_partition_load(const char *source, struct BilliardsPartition **out);

/**
 * Releases a partition handle. Null is ignored.
 *
 * # Safety
 * `p` must be null or a handle not yet freed.
 */
void billiards_partition_free(struct BilliardsPartition *p);

/**
 * Number of vertices.
 *
 * # Safety
 * `p` must be a live handle and `out` valid for a write.
 */
enum BilliardsStatus billiards_partition_size(const struct BilliardsPartition *p, size_t *out);

/**
 * Exact `Φ` of an admissible word `prefix:cycle` on `m` letters, written as
 * `num/den`.
 *
 * # Safety
 * `word` must be a NUL-terminated string and `out` valid for a write.
 */
enum BilliardsStatus billiards_phi_exact(const char *word, size_t m, char **out);

/**
 * Orbit of a rational point (`triple`), a quadratic form (`form`) or a
 * carrier (`carrier`) as JSON. Exactly one of the three must be non-null;
 * each is three comma-separated integers.
 *
 * # Safety
 * `p` must be a live handle, the strings null or NUL-terminated and `out`
 * valid for a write.
 */
enum BilliardsStatus billiards_orbit_json(const struct BilliardsPartition *p,
                                          const char *triple,
                                          const char *form,
                                          const char *carrier,
                                          size_t max_steps,
                                          char **out);

/**
 * Joint spectral radius bracket of the reflection family using words of
 * length at most `max_len`.
 *
 * # Safety
 * `p` must be a live handle and the outputs valid for writes.
 */
enum BilliardsStatus billiards_jsr(const struct BilliardsPartition *p,
                                   size_t max_len,
                                   double tolerance,
                                   double *lower,
                                   double *upper,
                                   bool *certified);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void billiards_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BILLIARDS_H */
