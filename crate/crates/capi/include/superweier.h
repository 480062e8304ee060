/* C interface for the superweier library. Generated by cbindgen; do not edit. */

#ifndef SUPERWEIER_H
#define SUPERWEIER_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of a call. Anything but `SW_STATUS_OK` leaves the out pointers
 * untouched; `sw_last_error_message` then describes the failure.
 */
typedef enum {
  SW_STATUS_OK = 0,
  SW_STATUS_INVALID_PARAMS = 1,
  SW_STATUS_DOMAIN_ERROR = 2,
  SW_STATUS_PRECONDITION_VIOLATED = 3,
  SW_STATUS_CANCELLATION_TO_ZERO = 4,
  SW_STATUS_OVERFLOW = 5,
  SW_STATUS_RESOURCE_LIMIT = 6,
  SW_STATUS_BUDGET_EXCEEDED = 7,
  SW_STATUS_ZERO_VALUE = 8,
  SW_STATUS_INVALID_TOLERANCE = 9,
  SW_STATUS_NULL_POINTER = 10,
  SW_STATUS_PANIC = 11,
} SwStatus;

/**
 * Convergence regime of a growth schedule against the wall `beta = ab^3`.
 */
typedef enum {
  SW_REGIME_SUB_CRITICAL = 0,
  SW_REGIME_CRITICAL = 1,
  SW_REGIME_SUPER_CRITICAL = 2,
} SwRegime;

/**
 * Opaque validated Weierstrass parameter pair.
 */
typedef struct SwParams SwParams;

/**
 * Opaque precision configuration (mantissa bits, escalation budget).
 */
typedef struct SwPrecision SwPrecision;

/**
 * Nonzero complex value as `(ln |z|, arg z)`; immune to overflow.
 */
typedef struct {
  double log_modulus;
  double phase;
} SwLogPolar;

/**
 * Complex value as a cartesian pair of doubles.
 */
typedef struct {
  double re;
  double im;
} SwComplex;

/**
 * Per-frequency error budget for `sup |F_n - e^{i alpha x}|` on `[-M, M]`.
 */
typedef struct {
  double k;
  double j;
  double bound;
} SwErrorBudget;

/**
 * Whole-series budget for `sup |W_N - W_{N,n}|` on `[-M, M]`.
 */
typedef struct {
  double s1;
  double s2;
  double k_max;
  double bound;
  /**
   * Least admissible oscillation order, `ceil(max(4M/pi, K_max))`.
   */
  uint64_t min_n;
} SwGlobalBudget;

/**
 * Law-of-cosines split of `|w - z|^2`.
 */
typedef struct {
  double distance_sq;
  double radial;
  double angular;
} SwCarnotParts;

/**
 * Outcome of the fixed-order divergence probe.
 */
typedef struct {
  bool diverged;
  /**
   * First truncation index past the threshold; -1 when none.
   */
  int64_t n_hit;
  double partial_log_modulus;
} SwDivergenceProbe;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Description of the most recent failure on this thread. The pointer stays
 * valid until the next failing call on the same thread; never free it.
 */
const char *sw_last_error_message(void);

/**
 * Library version as a static string; never free it.
 */
const char *sw_version(void);

/**
 * Creates a precision configuration. `mantissa_bits >= 64`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one pointer.
 */
SwStatus sw_precision_new(uint32_t mantissa_bits, uint32_t max_escalations, SwPrecision **out);

/**
 * # Safety
 * `p` must come from [`sw_precision_new`] and not have been freed.
 */
void sw_precision_free(SwPrecision *p);

/**
 * Validates `(a, b)` and creates a parameter handle. With `strict` set the
 * classical hypotheses apply (`b` an odd integer, `ab > 1 + 3 pi / 2`),
 * otherwise `0 < a < 1` and `b > 1` suffice. The values are carried at
 * `prec`'s working precision.
 *
 * # Safety
 * `prec` must be a live precision handle; `out` must be writable.
 */
SwStatus sw_params_new(double a, double b, bool strict, const SwPrecision *prec, SwParams **out);

/**
 * # Safety
 * `p` must come from [`sw_params_new`] and not have been freed.
 */
void sw_params_free(SwParams *p);

/**
 * `F_n(x; alpha)` in log-polar form via the closed polar formulas; cost is
 * independent of `n`. Requires `|x/n| < pi`.
 *
 * # Safety
 * `prec` must be a live precision handle; `out` must be writable.
 */
SwStatus sw_eval_fn(uint64_t n, double alpha, double x, const SwPrecision *prec, SwLogPolar *out);

/**
 * `F_n(x; alpha)` through the O(n) Fourier superposition (the independent
 * oracle route); capped at order 4096.
 *
 * # Safety
 * `prec` must be a live precision handle; `out` must be writable.
 */
SwStatus sw_eval_fn_sum(uint64_t n,
                        double alpha,
                        double x,
                        const SwPrecision *prec,
                        SwComplex *out);

/**
 * Local wave number `alpha / (cos^2(x/n) + alpha^2 sin^2(x/n))`.
 *
 * # Safety
 * `out` must be writable.
 */
SwStatus sw_local_wave_number(uint64_t n, double alpha, double x, double *out);

/**
 * Superoscillation-region half-width `n * arctan(1/sqrt(alpha))`, `alpha > 1`.
 *
 * # Safety
 * `out` must be writable.
 */
SwStatus sw_superosc_boundary(uint64_t n, double alpha, double *out);

/**
 * Truncated series `W_N(x)`.
 *
 * # Safety
 * `params` and `prec` must be live handles; `out` must be writable.
 */
SwStatus sw_eval_truncated(const SwParams *params,
                           uint32_t n_trunc,
                           double x,
                           const SwPrecision *prec,
                           SwComplex *out);

/**
 * `W(x)` to within `tol`, reporting the truncation index used.
 *
 * # Safety
 * `params` and `prec` must be live handles; `out` and `out_n_used` must be
 * writable.
 */
SwStatus sw_eval_weierstrass(const SwParams *params,
                             double x,
                             double tol,
                             const SwPrecision *prec,
                             SwComplex *out,
                             uint32_t *out_n_used);

/**
 * Superoscillating approximant `W_{N,n}(x)` in log-polar form.
 *
 * # Safety
 * `params` and `prec` must be live handles; `out` must be writable.
 */
SwStatus sw_eval_super_weierstrass(const SwParams *params,
                                   uint32_t n_trunc,
                                   uint64_t n,
                                   double x,
                                   const SwPrecision *prec,
                                   SwLogPolar *out);

/**
 * Gap-estimate sides `|(1+y)^gamma - 1|` and `gamma |y| e^{gamma |y|}`.
 *
 * # Safety
 * `out_lhs` and `out_rhs` must be writable.
 */
SwStatus sw_lemma_gap(double gamma, double y, double *out_lhs, double *out_rhs);

/**
 * Per-frequency budget for `sup_{|x|<=M} |F_n(x; alpha) - e^{i alpha x}|`;
 * requires `n >= 4M/pi`.
 *
 * # Safety
 * `out` must be writable.
 */
SwStatus sw_single_term_bound(uint64_t n, double alpha, double half_width, SwErrorBudget *out);

/**
 * Whole-series budget for `sup_{|x|<=M} |W_N - W_{N,n}|`; requires
 * `n >= max(4M/pi, K_max)` and names the binding constraint otherwise.
 *
 * # Safety
 * `params` must be a live handle; `out` must be writable.
 */
SwStatus sw_global_bound(const SwParams *params,
                         double half_width,
                         uint32_t n_trunc,
                         uint64_t n,
                         SwGlobalBudget *out);

/**
 * Law-of-cosines split of `|w - z|^2` into radial and angular parts.
 *
 * # Safety
 * `out` must be writable.
 */
SwStatus sw_carnot_decompose(SwLogPolar w, SwLogPolar z, SwCarnotParts *out);

/**
 * Measured `sup |W_N - W_{N,n}|` over a uniform grid of `[-M, M]`.
 *
 * # Safety
 * `params` and `prec` must be live handles; `out_sup` and `out_argmax`
 * must be writable.
 */
SwStatus sw_empirical_sup_error(const SwParams *params,
                                double half_width,
                                uint32_t n_trunc,
                                uint64_t n,
                                size_t grid_points,
                                const SwPrecision *prec,
                                double *out_sup,
                                double *out_argmax);

/**
 * Fixed-order divergence probe: accumulates partial sums at `x` until the
 * log-modulus exceeds `threshold_log` or `n_cap` is reached.
 *
 * # Safety
 * `params` and `prec` must be live handles; `out` must be writable.
 */
SwStatus sw_divergence_probe(const SwParams *params,
                             uint64_t n,
                             double x,
                             double threshold_log,
                             uint32_t n_cap,
                             const SwPrecision *prec,
                             SwDivergenceProbe *out);

/**
 * Moduli ratios of consecutive series terms at fixed `n`; fills
 * `out[0..=m_max]` (the buffer must hold `m_max + 1` doubles).
 *
 * # Safety
 * `params` must be a live handle; `out` must point to at least
 * `m_max + 1` writable doubles.
 */
SwStatus sw_ratio_sequence(const SwParams *params,
                           uint64_t n,
                           double x,
                           uint32_t m_max,
                           double *out);

/**
 * Symbolic regime of the schedule `n_N = round(c N^p beta^N)` relative to
 * the divergence wall `beta = a b^3`.
 *
 * # Safety
 * `params` must be a live handle; `out` must be writable.
 */
SwStatus sw_classify(const SwParams *params, double c, double p, double beta, SwRegime *out);

/**
 * Converts a log-polar value to cartesian doubles, failing with
 * `SW_STATUS_OVERFLOW` when `log_modulus` exceeds `max_log_modulus`.
 *
 * # Safety
 * `out` must be writable.
 */
SwStatus sw_logpolar_to_cartesian(SwLogPolar v, double max_log_modulus, SwComplex *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SUPERWEIER_H */
