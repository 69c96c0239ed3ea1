#ifndef CONFORMABLE_HYDROGEN_H
#define CONFORMABLE_HYDROGEN_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ChLevel {
  CH_LEVEL_QUICK = 0,
  CH_LEVEL_FULL = 1,
} ChLevel;

typedef enum ChStatus {
  CH_STATUS_OK = 0,
  CH_STATUS_NULL_POINTER = 1,
  CH_STATUS_INVALID_ARGUMENT = 2,
  /**
   * An argument lies outside the domain of the function.
   */
  CH_STATUS_DOMAIN = 3,
  /**
   * Non-finite evaluation or unconverged quadrature.
   */
  CH_STATUS_NUMERICAL = 4,
  /**
   * The verification suite ran and at least one check failed.
   */
  CH_STATUS_VERIFICATION_FAILED = 5,
  CH_STATUS_PANIC = 6,
} ChStatus;

/**
 * Opaque model parameters: conformable order and α-Bohr radius.
 */
typedef struct ChModel ChModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread; empty if none.
 */
const char *ch_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *ch_version(void);

/**
 * Creates a natural-unit model (`r_b^α = 1`).
 *
 * # Safety
 * `out` must be valid for writing one pointer.
 */
enum ChStatus ch_model_new_natural(double alpha, struct ChModel **out);

/**
 * Creates a physical-unit model with α-Bohr radius `r_b_alpha`.
 *
 * # Safety
 * `out` must be valid for writing one pointer.
 */
enum ChStatus ch_model_new_physical(double alpha, double r_b_alpha, struct ChModel **out);

/**
 * Releases a model; null is ignored.
 *
 * # Safety
 * `model` must be null or a handle from a `ch_model_new_*` function that has
 * not been freed.
 */
void ch_model_free(struct ChModel *model);

/**
 * # Safety
 * `model` must be a live handle; `out` valid for writing.
 */
enum ChStatus ch_model_alpha(const struct ChModel *model, double *out);

/**
 * α-energy level `E^α` in eV.
 *
 * # Safety
 * `out` must be valid for writing.
 */
enum ChStatus ch_energy_level(uint32_t n, double alpha, double *out);

/**
 * Radial wavefunction `R_{nℓα}(r^α)`.
 *
 * # Safety
 * `model` must be a live handle; `out` valid for writing.
 */
enum ChStatus ch_radial(const struct ChModel *model, uint32_t n, uint32_t l, double r, double *out);

/**
 * Full wavefunction `ψ_{nℓmα}(r, θ, φ)` as real and imaginary parts.
 *
 * # Safety
 * `model` must be a live handle; `out_re` and `out_im` valid for writing.
 */
enum ChStatus ch_wavefunction(const struct ChModel *model,
                              uint32_t n,
                              uint32_t l,
                              int32_t m,
                              double r,
                              double theta,
                              double phi,
                              double *out_re,
                              double *out_im);

/**
 * α-probability density `r^{2α}|R|²` at `len` strictly increasing radii.
 *
 * # Safety
 * `model` must be a live handle; `grid` readable and `out` writable for
 * `len` values.
 */
enum ChStatus ch_density(const struct ChModel *model,
                         uint32_t n,
                         uint32_t l,
                         const double *grid,
                         uintptr_t len,
                         double *out);

/**
 * Conformable associated Laguerre function `L^m_{sα}(x^α/α)`.
 *
 * # Safety
 * `out` must be valid for writing.
 */
enum ChStatus ch_conf_laguerre(uint32_t degree,
                               uint32_t order,
                               double alpha,
                               double x,
                               double *out);

/**
 * Conformable associated Legendre function `P^{mα}_{ℓα}(cos θ^α)`.
 *
 * # Safety
 * `out` must be valid for writing.
 */
enum ChStatus ch_conf_legendre(uint32_t l, int32_t m, double alpha, double theta, double *out);

/**
 * Normalization integral `∫ r^{2α}|R|² d^α r` (one for a correct state).
 *
 * # Safety
 * `model` must be a live handle; `out` valid for writing.
 */
enum ChStatus ch_normalization(const struct ChModel *model, uint32_t n, uint32_t l, double *out);

/**
 * Runs the verification suite. Returns [`ChStatus::VerificationFailed`]
 * when any check fails; the counts are written in either case.
 *
 * # Safety
 * `checks_run` and `checks_failed` must be valid for writing.
 */
enum ChStatus ch_verify(enum ChLevel level, uintptr_t *checks_run, uintptr_t *checks_failed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CONFORMABLE_HYDROGEN_H */
