/* Smart City Defense Game solver: C interface to the shared library.
 *
 * Every entry point returns an scdg_status; on failure the outputs are left
 * untouched and scdg_last_error() carries a message for the calling thread.
 * Text results come back as opaque heap buffers owned by the library;
 * release them with scdg_text_free.
 */
#ifndef SCDG_H
#define SCDG_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum scdg_status {
  SCDG_OK = 0,
  SCDG_ERR_ARG = 1,       /* null pointer or out-of-range enum/int argument */
  SCDG_ERR_DOMAIN = 2,    /* invalid game description or configuration */
  SCDG_ERR_INVARIANT = 3, /* internal consistency check failed */
  SCDG_ERR_INTERNAL = 4   /* unexpected failure */
} scdg_status;

typedef enum scdg_mode {
  SCDG_MODE_FULL = 0,   /* exact per-layer contest payoffs */
  SCDG_MODE_LARGE_N = 1 /* limiting linear form; the solver default */
} scdg_mode;

typedef enum scdg_regime {
  SCDG_REGIME_T3 = 0,
  SCDG_REGIME_T4 = 1,
  SCDG_REGIME_T5 = 2,
  SCDG_REGIME_T5M = 3,
  SCDG_REGIME_UNCLASSIFIED = 4
} scdg_regime;

typedef enum scdg_provenance {
  SCDG_PROVENANCE_CLOSED_FORM = 0,
  SCDG_PROVENANCE_NUMERIC = 1
} scdg_provenance;

/* One game instance.
 *   c1, c2  defense budgets of the two allied agencies
 *   tau     attacker budget
 *   v1, v2  per-battlefield values of the two layers (> 0)
 *   theta1, theta2  battlefield counts (integers >= 3)
 */
typedef struct scdg_params {
  double c1;
  double c2;
  double tau;
  double v1;
  double v2;
  int theta1;
  int theta2;
} scdg_params;

typedef struct scdg_solution {
  double r12;    /* stage-1 transfer, agency 1 -> 2 */
  double r21;    /* stage-1 transfer, agency 2 -> 1 */
  double d1;     /* post-transfer endowments */
  double d2;
  double tau1;   /* stage-2 attack split */
  double tau2;
  double psi1;   /* expected payoffs */
  double psi2;
  double psiT;
  double sc_sum; /* psi1 + psi2 */
  scdg_regime regime;
  scdg_provenance provenance;
} scdg_solution;

/* Opaque text buffer. */
typedef struct scdg_text scdg_text;

const char* scdg_text_data(const scdg_text* t); /* NUL-terminated */
size_t scdg_text_size(const scdg_text* t);
void scdg_text_free(scdg_text* t); /* NULL is a no-op */

/* Checks the instance without solving it. */
scdg_status scdg_validate(const scdg_params* p);

/* Two-stage equilibrium solution. */
scdg_status scdg_solve(const scdg_params* p, scdg_mode mode,
                       scdg_solution* out);

/* Single-record CSV (with header) / flat JSON object for one instance. */
scdg_status scdg_solve_csv(const scdg_params* p, scdg_mode mode,
                           scdg_text** out);
scdg_status scdg_solve_json(const scdg_params* p, scdg_mode mode,
                            scdg_text** out);

/* One CSV row per evenly spaced value of `field` (one of c1, c2, tau, v1,
 * v2, theta1, theta2) across [from, to]; steps >= 2. Rows whose parameters
 * fail validation carry the message in the `error` column. */
scdg_status scdg_sweep_csv(const scdg_params* p, const char* field,
                           double from, double to, int steps, scdg_mode mode,
                           scdg_text** out);

/* Monte Carlo comparison of the no-transfer, equilibrium-transfer, and
 * random-transfer behaviors; deterministic for a fixed (trials, seed). */
scdg_status scdg_compare_csv(const scdg_params* p, int trials, uint64_t seed,
                             scdg_mode mode, scdg_text** out);

/* Closed form versus grid oracle on one instance. grid_points must be odd
 * and >= 101; tol <= 0 selects the automatic 1e-6-of-total tolerance.
 * *all_ok is set to 1 when every check passes, else 0. */
scdg_status scdg_oracle_check_csv(const scdg_params* p, int grid_points,
                                  double tol, scdg_mode mode, int* all_ok,
                                  scdg_text** out);

/* Expected defender payoff of a standalone one-layer contest. */
scdg_status scdg_defender_payoff(int theta, double value, double defense,
                                 double attack, scdg_mode mode, double* out);

/* Message from the most recent failing call on this thread ("" if none). */
const char* scdg_last_error(void);

const char* scdg_regime_name(scdg_regime r);
const char* scdg_version(void);

#ifdef __cplusplus
}
#endif

#endif /* SCDG_H */
