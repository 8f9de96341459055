#ifndef EOSTRATA_H
#define EOSTRATA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum EoStatus {
  EO_STATUS_OK = 0,
  EO_STATUS_NULL_POINTER = 1,
  EO_STATUS_INVALID_ARGUMENT = 2,
  EO_STATUS_BUFFER_TOO_SMALL = 3,
  EO_STATUS_CHECK_FAILED = 4,
  EO_STATUS_INTERNAL = 5,
} EoStatus;

/**
 * The result of a point census.
 */
typedef struct EoCensus EoCensus;

/**
 * An element of the Weyl group `W_n`.
 */
typedef struct EoWeyl EoWeyl;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message of this thread into `buf` (NUL-terminated,
 * truncated to `cap`). Returns the full message length without the NUL.
 *
 * # Safety
 * `buf` must be null or point to `cap` writable bytes.
 */
size_t eo_last_error(char *buf, size_t cap);

/**
 * Static, NUL-terminated version string.
 */
const char *eo_version(void);

/**
 * Builds a Weyl element from its one-line form `values[0..len]` (values 1-based).
 *
 * # Safety
 * `values` must point to `len` readable values; `out` must be writable.
 */
enum EoStatus eo_weyl_from_one_line(const size_t *values, size_t len, struct EoWeyl **out);

/**
 * # Safety
 * `w` must be null or a handle from this library, not yet freed.
 */
void eo_weyl_free(struct EoWeyl *w);

/**
 * # Safety
 * `w` must be a live handle.
 */
size_t eo_weyl_rank(const struct EoWeyl *w);

/**
 * # Safety
 * `w` must be a live handle.
 */
size_t eo_weyl_length(const struct EoWeyl *w);

/**
 * Writes the `2n` one-line values into `out[0..cap]`.
 *
 * # Safety
 * `w` must be a live handle; `out` must point to `cap` writable values.
 */
enum EoStatus eo_weyl_one_line(const struct EoWeyl *w, size_t *out, size_t cap);

/**
 * The lift of `w ∈ W_c` to `W_g` fixing `1..=g-c`.
 *
 * # Safety
 * `w` must be a live handle; `out` must be writable.
 */
enum EoStatus eo_weyl_lift(const struct EoWeyl *w, size_t g, struct EoWeyl **out);

/**
 * Runs the census over `F_{p^{2m}}`.
 *
 * # Safety
 * `out` must be writable.
 */
enum EoStatus eo_census_run(size_t c, uint32_t p, uint32_t m, struct EoCensus **out);

/**
 * # Safety
 * `cen` must be null or a live handle.
 */
void eo_census_free(struct EoCensus *cen);

/**
 * Number of records (one per stratum label).
 *
 * # Safety
 * `cen` must be a live handle.
 */
size_t eo_census_len(const struct EoCensus *cen);

/**
 * True when every per-point consistency check passed.
 *
 * # Safety
 * `cen` must be a live handle.
 */
bool eo_census_checks_pass(const struct EoCensus *cen);

/**
 * Count and label of record `idx`. `label` may be null.
 *
 * # Safety
 * `cen` must be a live handle; `count` must be writable; `label` null or writable.
 */
enum EoStatus eo_census_record(const struct EoCensus *cen,
                               size_t idx,
                               uint64_t *count,
                               struct EoWeyl **label);

/**
 * Fine label of the span of `c` rows of length `2c` (row-major element codes
 * in `F_{p^k}`), which must be Lagrangian for the standard form.
 *
 * # Safety
 * `codes` must point to `2c²` values; `out` must be writable.
 */
enum EoStatus eo_classify_lagrangian(uint32_t p,
                                     uint32_t k,
                                     size_t c,
                                     const uint32_t *codes,
                                     struct EoWeyl **out);

/**
 * Ekedahl–Oort type in `W_g` of the Dieudonné module built from the Lagrangian.
 *
 * # Safety
 * As for [`eo_classify_lagrangian`].
 */
enum EoStatus eo_type_of_lagrangian(uint32_t p,
                                    uint32_t k,
                                    size_t c,
                                    size_t g,
                                    const uint32_t *codes,
                                    struct EoWeyl **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EOSTRATA_H */
