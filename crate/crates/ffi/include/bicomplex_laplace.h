#ifndef BICOMPLEX_LAPLACE_H
#define BICOMPLEX_LAPLACE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Warning bits in [`BlInversion::warnings`].
 */
#define BL_WARN_NON_REAL 1

#define BL_WARN_AMPLIFIED 2

typedef enum BlMethod {
  BL_METHOD_AUTO = 0,
  BL_METHOD_BROMWICH = 1,
  BL_METHOD_RESIDUE = 2,
} BlMethod;

/**
 * Status codes returned by every fallible function.
 */
typedef enum BlStatus {
  BL_STATUS_OK = 0,
  BL_STATUS_NULL_POINTER = 1,
  BL_STATUS_INVALID_ARGUMENT = 2,
  BL_STATUS_SINGULAR = 3,
  BL_STATUS_DOMAIN = 4,
  BL_STATUS_CONVERGENCE_REGION = 5,
  BL_STATUS_INVALID_IMAGE = 6,
  BL_STATUS_NUMERIC = 7,
  BL_STATUS_PANIC = 8,
} BlStatus;

/**
 * Opaque image function.
 */
typedef struct BlImage BlImage;

/**
 * Opaque object function.
 */
typedef struct BlSignal BlSignal;

/**
 * `a0 + i1 a1 + i2 a2 + i1i2 a3`.
 */
typedef struct BlBicomplex {
  double a0;
  double a1;
  double a2;
  double a3;
} BlBicomplex;

typedef struct BlComplex {
  double re;
  double im;
} BlComplex;

/**
 * Bromwich line parameters; obtain defaults from `bl_bromwich_config_default`.
 */
typedef struct BlBromwichConfig {
  double abscissa_offset;
  double half_height;
  double step_h;
  double refine_tol;
  uint32_t max_refinements;
  double reality_tol;
} BlBromwichConfig;

typedef struct BlInversion {
  double t;
  double f;
  double reality_defect;
  uint32_t refinements;
  uint32_t warnings;
} BlInversion;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null if none.
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *bl_last_error(void);

struct BlBicomplex bl_bicomplex_mul(struct BlBicomplex x, struct BlBicomplex y);

double bl_bicomplex_norm(struct BlBicomplex x);

bool bl_bicomplex_is_singular(struct BlBicomplex x);

/**
 * # Safety
 * `out` must be null or valid for writes.
 */
enum BlStatus bl_bicomplex_inverse(struct BlBicomplex x, struct BlBicomplex *out);

/**
 * # Safety
 * `xi1` and `xi2` must be null or valid for writes.
 */
enum BlStatus bl_bicomplex_to_idempotent(struct BlBicomplex x,
                                         struct BlComplex *xi1,
                                         struct BlComplex *xi2);

struct BlBicomplex bl_bicomplex_from_idempotent(struct BlComplex xi1, struct BlComplex xi2);

struct BlBromwichConfig bl_bromwich_config_default(void);

/**
 * Image of a catalog pair (`"unit_step"`, `"sin"`, `"cos"`, `"damped_cos"`,
 * `"damped_sin"`).
 *
 * # Safety
 * `id` must be null or a nul-terminated string; `out` null or valid for writes.
 */
enum BlStatus bl_image_new_catalog(const char *id, double omega, double a, struct BlImage **out);

/**
 * Rational image with separate components. Coefficient arrays are in
 * ascending powers of `s`.
 *
 * # Safety
 * Each array must be null (only when its length is 0) or valid for its
 * length; `out` must be null or valid for writes.
 */
enum BlStatus bl_image_new_rational(const struct BlComplex *num1,
                                    size_t num1_len,
                                    const struct BlComplex *den1,
                                    size_t den1_len,
                                    const struct BlComplex *num2,
                                    size_t num2_len,
                                    const struct BlComplex *den2,
                                    size_t den2_len,
                                    double abscissa_k,
                                    struct BlImage **out);

/**
 * # Safety
 * `image` must be null or a handle from `bl_image_new_*` not yet freed.
 */
void bl_image_free(struct BlImage *image);

/**
 * Inverts `image` at `len` strictly increasing times `t > 0`.
 *
 * `results` and `statuses` receive one entry per time. The call returns
 * `BL_STATUS_OK` when every point succeeded; otherwise the first per-point
 * failure is returned and failed entries have `f = NaN`. Grid validation
 * errors fill nothing.
 *
 * # Safety
 * `image` must be a live handle; `times`, `results` and `statuses` must be
 * valid for `len` elements (`statuses` may be null); `config` may be null
 * for defaults.
 */
enum BlStatus bl_invert(const struct BlImage *image,
                        const double *times,
                        size_t len,
                        enum BlMethod method,
                        const struct BlBromwichConfig *config,
                        struct BlInversion *results,
                        enum BlStatus *statuses);

/**
 * Object function of a catalog pair.
 *
 * # Safety
 * As for `bl_image_new_catalog`.
 */
enum BlStatus bl_signal_new_catalog(const char *id, double omega, double a, struct BlSignal **out);

/**
 * Piecewise-linear signal through `(t[i], f[i])`, zero after the last
 * sample, with declared exponential order `order_k`.
 *
 * # Safety
 * `t` and `f` must be valid for `len` elements; `out` null or valid for writes.
 */
enum BlStatus bl_signal_new_samples(const double *t,
                                    const double *f,
                                    size_t len,
                                    double order_k,
                                    struct BlSignal **out);

/**
 * # Safety
 * `signal` must be null or a handle from `bl_signal_new_*` not yet freed.
 */
void bl_signal_free(struct BlSignal *signal);

/**
 * Forward transform of `signal` at `xi` with default quadrature settings.
 *
 * # Safety
 * `signal` must be a live handle; `out` null or valid for writes.
 */
enum BlStatus bl_laplace(const struct BlSignal *signal,
                         struct BlBicomplex xi,
                         struct BlBicomplex *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BICOMPLEX_LAPLACE_H */
