#ifndef MINIMORPH_H
#define MINIMORPH_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum {
  MM_STATUS_OK = 0,
  MM_STATUS_NULL_POINTER = 1,
  MM_STATUS_INVALID_UTF8 = 2,
  MM_STATUS_PARSE = 3,
  MM_STATUS_UNKNOWN_CATALOG_ENTRY = 4,
  MM_STATUS_DOMAIN_VIOLATION = 5,
  MM_STATUS_DIMENSION_MISMATCH = 6,
  MM_STATUS_DEGENERATE_PARAMETERS = 7,
  MM_STATUS_ALPHA_ZERO = 8,
  MM_STATUS_NO_CONVERGENCE = 9,
  MM_STATUS_CONVERGED_TO_CRITICAL = 10,
  MM_STATUS_EXACT_MODE_UNAVAILABLE = 11,
  MM_STATUS_INVALID_ARGUMENT = 12,
  MM_STATUS_IO = 13,
  MM_STATUS_OUT_OF_RANGE = 14,
  MM_STATUS_OTHER = 15,
  MM_STATUS_PANIC = 16,
} MmStatus;

/**
 * Opaque handle to a catalog map.
 */
typedef struct MmMorphism MmMorphism;

/**
 * Opaque handle to a traced fiber patch.
 */
typedef struct MmPatch MmPatch;

/**
 * A point of the quadric coefficient variety in floating point, with the
 * exact regularity flag and criticality determinant.
 */
typedef struct {
  /**
   * `a1, a2, b1, b2, b3` as (re, im) pairs.
   */
  double coeffs[5][2];
  double determinant[2];
  bool regular;
} MmQuintuple;

/**
 * Message of the last failed call on this thread, or NULL. The pointer stays
 * valid until the next call into this library on the same thread.
 */
const char *mm_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *mm_version(void);

/**
 * Looks up a catalog entry such as `s4-quadric` or `phi-odd:d=3,n=2`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
MmStatus mm_morphism_new(const char *name, MmMorphism **out);

/**
 * # Safety
 * `m` must come from [`mm_morphism_new`] and not be used afterwards. NULL is
 * ignored.
 */
void mm_morphism_free(MmMorphism *m);

/**
 * Number of real variables of the map, 0 for NULL.
 *
 * # Safety
 * `m` must be NULL or a live handle.
 */
uintptr_t mm_morphism_n_vars(const MmMorphism *m);

/**
 * Value of the map at `x[0..n]`.
 *
 * # Safety
 * `m` must be a live handle, `x` must point to `n` doubles, `re` and `im`
 * must be writable.
 */
MmStatus mm_eval(const MmMorphism *m, const double *x, uintptr_t n, double *re, double *im);

/**
 * Tension field of the map at `x` for the metric of its ambient space.
 *
 * # Safety
 * As for [`mm_eval`].
 */
MmStatus mm_tension(const MmMorphism *m, const double *x, uintptr_t n, double *re, double *im);

/**
 * Conformality `kappa(phi, phi)` of the map at `x`.
 *
 * # Safety
 * As for [`mm_eval`].
 */
MmStatus mm_conformality(const MmMorphism *m, const double *x, uintptr_t n, double *re, double *im);

/**
 * Variety point over exact complex literals such as `3`, `5i` or `1/2-i`.
 * `branch` is `+1` or `-1`.
 *
 * # Safety
 * `b1`, `b2` must be NUL-terminated strings and `out` writable.
 */
MmStatus mm_variety_point(const char *b1, const char *b2, int32_t branch, MmQuintuple *out);

/**
 * Traces an `ni x nj` patch of the fiber `Phi = alpha` with step `h`
 * (the default settings otherwise), annotated with mean curvature.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` writable.
 */
MmStatus mm_trace(const char *name,
                  double alpha_re,
                  double alpha_im,
                  uintptr_t ni,
                  uintptr_t nj,
                  double h,
                  MmPatch **out);

/**
 * # Safety
 * `p` must come from [`mm_trace`] and not be used afterwards. NULL is ignored.
 */
void mm_patch_free(MmPatch *p);

/**
 * Number of nodes in the patch, 0 for NULL.
 *
 * # Safety
 * `p` must be NULL or a live handle.
 */
uintptr_t mm_patch_len(const MmPatch *p);

/**
 * Coordinates of node `k` into `xyz[0..5]` and its mean-curvature norm into
 * `curvature` (NaN when the estimator failed there).
 *
 * # Safety
 * `p` must be a live handle, `xyz` must hold 5 doubles, `curvature` must be
 * writable.
 */
MmStatus mm_patch_node(const MmPatch *p, uintptr_t k, double *xyz, double *curvature);

/**
 * JSON report of the trace; valid while the handle lives.
 *
 * # Safety
 * `p` must be NULL or a live handle.
 */
const char *mm_patch_report(const MmPatch *p);

/**
 * Writes `<stem>.ply`, `<stem>.csv` and `<stem>.json` into `dir`.
 *
 * # Safety
 * `p` must be a live handle; `dir` and `stem` NUL-terminated strings.
 */
MmStatus mm_patch_write(const MmPatch *p, const char *dir, const char *stem);

#endif  /* MINIMORPH_H */
