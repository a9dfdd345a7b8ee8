/* C interface to the nls-spectral torus NLS solver library. */

#ifndef NLS_SPECTRAL_H
#define NLS_SPECTRAL_H

/* Generated by cbindgen from nls-spectral-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum NlsStatus {
  NLS_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  NLS_STATUS_NULL_ARGUMENT = 1,
  /**
   * An argument violated a precondition (dimension, resolution, axis,
   * wavenumber range, method/grid mismatch, ...).
   */
  NLS_STATUS_INVALID_ARGUMENT = 2,
  /**
   * A buffer length did not match the grid.
   */
  NLS_STATUS_LENGTH_MISMATCH = 3,
  /**
   * A panic crossed the boundary; the inputs were left untouched.
   */
  NLS_STATUS_INTERNAL_ERROR = 4,
} NlsStatus;

/**
 * Time-stepping method selector.
 */
typedef enum NlsMethod {
  NLS_METHOD_LOW_REG1D = 0,
  NLS_METHOD_LOW_REG_DD = 1,
  NLS_METHOD_STRANG = 2,
} NlsMethod;

/**
 * Norm selector; `r` is consulted only for `SOBOLEV_R`.
 */
typedef enum NlsNorm {
  NLS_NORM_DISCRETE_L2 = 0,
  NLS_NORM_DISCRETE_H1 = 1,
  NLS_NORM_SOBOLEV_R = 2,
} NlsNorm;

/**
 * Opaque field handle (complex state on a grid).
 */
typedef struct NlsField NlsField;

/**
 * Opaque torus grid handle.
 */
typedef struct NlsGrid NlsGrid;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Version string of the underlying library; static storage, do not free.
 */
const char *nls_version(void);

/**
 * Create a `dim`-dimensional torus grid with `n` points per axis
 * (`n` even, ≥ 2). The handle must be released with `nls_grid_free`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one pointer.
 */
enum NlsStatus nls_grid_new(size_t dim, size_t n, struct NlsGrid **out);

/**
 * # Safety
 * `grid` must be a handle from `nls_grid_new` not yet freed, or null.
 */
void nls_grid_free(struct NlsGrid *grid);

/**
 * Number of grid points / coefficients, `N^d`.
 *
 * # Safety
 * `grid` must be a live grid handle; `out` must be writable.
 */
enum NlsStatus nls_grid_len(const struct NlsGrid *grid, size_t *out);

/**
 * Random initial data of Sobolev regularity `r` from the deterministic
 * seeded coefficient stream.
 *
 * # Safety
 * `grid` must be a live grid handle; `out` must be writable.
 */
enum NlsStatus nls_field_random_hr(const struct NlsGrid *grid,
                                   double r,
                                   uint64_t seed,
                                   struct NlsField **out);

/**
 * The exact single-mode solution `a e^{i k·x} e^{-i(|k|²+μ|a|²)t}` sampled
 * on the grid. `k` points to `k_len` wavenumbers, one per axis.
 *
 * # Safety
 * `grid` must be a live handle, `k` readable for `k_len` entries, `out`
 * writable.
 */
enum NlsStatus nls_field_plane_wave(const struct NlsGrid *grid,
                                    double amp_re,
                                    double amp_im,
                                    const int64_t *k,
                                    size_t k_len,
                                    double mu,
                                    double t,
                                    struct NlsField **out);

/**
 * Build a field from interleaved Fourier coefficients
 * (`re0, im0, re1, im1, ...`, transform order, length `2·N^d`).
 *
 * # Safety
 * `grid` live, `coeffs` readable for `len` doubles, `out` writable.
 */
enum NlsStatus nls_field_from_coeffs(const struct NlsGrid *grid,
                                     const double *coeffs,
                                     size_t len,
                                     struct NlsField **out);

/**
 * # Safety
 * `field` must be a live field handle, or null.
 */
void nls_field_free(struct NlsField *field);

/**
 * # Safety
 * `field` live, `out` writable.
 */
enum NlsStatus nls_field_clone(const struct NlsField *field, struct NlsField **out);

/**
 * Copy the Fourier coefficients out as interleaved doubles
 * (length `2·N^d`).
 *
 * # Safety
 * `field` live, `out` writable for `len` doubles.
 */
enum NlsStatus nls_field_coeffs(const struct NlsField *field, double *out, size_t len);

/**
 * Copy the physical grid values out as interleaved doubles
 * (length `2·N^d`, flat row-major order).
 *
 * # Safety
 * `field` live, `out` writable for `len` doubles.
 */
enum NlsStatus nls_field_physical(const struct NlsField *field, double *out, size_t len);

/**
 * Advance `field` by `nsteps` steps of the selected method and return the
 * result as a new handle (`nsteps = 1` is a single step).
 *
 * # Safety
 * `field` live, `out` writable.
 */
enum NlsStatus nls_solve(const struct NlsField *field,
                         enum NlsMethod method,
                         double tau,
                         double mu,
                         uint64_t nsteps,
                         struct NlsField **out);

/**
 * One step of the selected method.
 *
 * # Safety
 * `field` live, `out` writable.
 */
enum NlsStatus nls_step(const struct NlsField *field,
                        enum NlsMethod method,
                        double tau,
                        double mu,
                        struct NlsField **out);

/**
 * Norm of a field; `r` is used only for the Sobolev norm.
 *
 * # Safety
 * `field` live, `out` writable.
 */
enum NlsStatus nls_norm(const struct NlsField *field, enum NlsNorm kind, double r, double *out);

/**
 * Norm of the difference of two fields on the same grid.
 *
 * # Safety
 * `a`, `b` live, `out` writable.
 */
enum NlsStatus nls_distance(const struct NlsField *a,
                            const struct NlsField *b,
                            enum NlsNorm kind,
                            double r,
                            double *out);

/**
 * Total energy `(2π)^{-d} ∫ (|∇u|² + (μ/2)|u|⁴) dx`.
 *
 * # Safety
 * `field` live, `out` writable.
 */
enum NlsStatus nls_energy(const struct NlsField *field, double mu, double *out);

/**
 * Mass `(2π)^{-d} ∫ |u|² dx`.
 *
 * # Safety
 * `field` live, `out` writable.
 */
enum NlsStatus nls_mass(const struct NlsField *field, double *out);

/**
 * Log-log order fit over `(taus[i], errors[i])` samples, with roundoff
 * floor and saturation filtering. `out_reliable` is non-zero when at least
 * three monotone points survive.
 *
 * # Safety
 * `taus` and `errors` readable for `len` doubles; `out_order` and
 * `out_reliable` writable.
 */
enum NlsStatus nls_estimate_order(const double *taus,
                                  const double *errors,
                                  size_t len,
                                  double *out_order,
                                  int32_t *out_reliable);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NLS_SPECTRAL_H */
