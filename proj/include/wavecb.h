/* Public C interface for the wavelet confidence-ball library.
 *
 * Usage pattern:
 *   wavecb_config *cfg = wavecb_config_create();
 *   wavecb_config_set(cfg, "function", "f1");
 *   wavecb_config_set(cfg, "method", "sure-level");
 *   char *json = NULL;
 *   int rc = wavecb_simulate(cfg, &json);
 *   ...
 *   wavecb_string_free(json);
 *   wavecb_config_destroy(cfg);
 *
 * All entry points return a status code:
 *   0  success
 *   2  configuration error (unknown key, unparsable or out-of-range value,
 *      invalid input shape)
 *   3  numerical failure
 * On failure the thread-local message from wavecb_last_error() describes the
 * problem. Returned strings are heap-allocated; release them with
 * wavecb_string_free().
 */
#ifndef WAVECB_H
#define WAVECB_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct wavecb_config wavecb_config;

/* Creates a configuration with defaults: function=f0, n=1024, sigma=1,
 * alpha=0.05, method=universal, sigma-mode=known, reps=1000, seed=1, j0=2,
 * filter=s8, floor=0.72, delta=0, grid-size=21, threads=0 (auto), u=1,
 * wn=-1 (automatic widening). */
wavecb_config *wavecb_config_create(void);
void wavecb_config_destroy(wavecb_config *cfg);

/* Sets one option by string key. Recognized keys:
 *   function   f0 | f1 | f2
 *   n          power of two >= 8
 *   sigma      noise standard deviation (> 0; >= 0 for fit)
 *   alpha      miscoverage level in (0,1)
 *   method     universal | sure-global | sure-level | modulator
 *   sigma-mode known | plugin | double
 *   reps       Monte Carlo replications >= 1
 *   seed       unsigned 64-bit master seed
 *   j0         coarsest transform level
 *   filter     haar | s8 | s16
 *   floor      lower bound of the normalized threshold range, in (0.7072, 1)
 *   delta      function-space dilation coefficient (>= 0)
 *   grid-size  variance-grid size for sigma-mode=double (>= 1)
 *   threads    worker threads; 0 = WAVECB_THREADS env var, then hardware
 *   u          normalized threshold for diagnostics, in (0,1]
 *   wn         interval widening for band; negative = automatic
 * Returns 0 or 2. */
int wavecb_config_set(wavecb_config *cfg, const char *key, const char *value);

/* Runs the Monte Carlo coverage experiment; *report_json receives a
 * reproducible JSON report (byte-identical for equal seeds, serial or
 * parallel). */
int wavecb_simulate(const wavecb_config *cfg, char **report_json);

/* Fits the configured estimator to `samples` (length `n`, a power of two)
 * and emits a JSON record with the confidence ball, fitted curve and the
 * variance estimate used. */
int wavecb_fit(const wavecb_config *cfg, const double *samples, size_t n,
               char **result_json);

/* Simultaneous confidence intervals for window averages of the fitted curve.
 * `windows` holds `num_windows` (a,b) pairs flattened as a0,b0,a1,b1,...
 * with 0 <= a < b <= 1. *csv receives rows "descriptor,lower,upper". */
int wavecb_band(const wavecb_config *cfg, const double *samples, size_t n,
                const double *windows, size_t num_windows, char **csv);

/* Monte Carlo diagnostics of the centered loss-minus-risk process at the
 * configured normalized threshold "u": *table receives an aligned text table
 * with empirical mean/variance and the closed-form variance. */
int wavecb_diagnose(const wavecb_config *cfg, char **table);

void wavecb_string_free(char *s);

/* Thread-local description of the most recent failure ("" if none). The
 * pointer stays valid until the next library call on the same thread. */
const char *wavecb_last_error(void);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* WAVECB_H */
