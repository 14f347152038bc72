/* C interface for the tcljc simulation library.
 *
 * All functions return a tcljc_status; nonzero means failure and
 * tcljc_last_error() carries a human-readable message for the calling
 * thread. Objects returned through out-parameters are owned by the caller
 * and released with the matching _free function.
 */
#ifndef TCLJC_H
#define TCLJC_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tcljc_status {
  TCLJC_OK = 0,
  TCLJC_ERR_VALIDATION = 1, /* invalid physical input / failed checks */
  TCLJC_ERR_CONFIG = 2,     /* config parse or range error */
  TCLJC_ERR_NUMERICAL = 3   /* truncation, conditioning, step underflow */
} tcljc_status;

const char* tcljc_version(void);

/* Thread-local message describing the most recent failure. */
const char* tcljc_last_error(void);

typedef struct tcljc_params {
  double omega_a;
  double omega_c;
  double gamma;
  double g_re, g_im;
  double z_re, z_im;
  double lambda;
} tcljc_params;

/* Default parameter set (omega_a=1.3, omega_c=1.0, gamma=0.4, g=0.2, z=1,
 * lambda=0.05). */
void tcljc_params_default(tcljc_params* out);

/* Automatic Fock cutoff for amplitude z. */
int tcljc_auto_cutoff(double z_re, double z_im);

/* ---- trajectories ------------------------------------------------------ */

typedef struct tcljc_trajectory tcljc_trajectory;

/* rho0 is the 2x2 atom state packed row-major as interleaved re/im:
 * {r00_re, r00_im, r01_re, r01_im, r10_re, r10_im, r11_re, r11_im}.
 * fock_cutoff <= 0 selects the automatic cutoff for the configured z. */
tcljc_status tcljc_simulate_exact(const tcljc_params* params, int fock_cutoff,
                                  const double rho0[8], double t_max, int n_points,
                                  tcljc_trajectory** out);

/* order in {1,2,3,4}; source_numeric = 0 uses closed-form cumulants,
 * nonzero co-integrates the numeric moment stack (needs fock_cutoff). */
tcljc_status tcljc_simulate_tcl(const tcljc_params* params, int order,
                                int source_numeric, int fock_cutoff,
                                const double rho0[8], double t_max, int n_points,
                                tcljc_trajectory** out);

size_t tcljc_trajectory_length(const tcljc_trajectory* tr);

/* Fills t and the reduced 2x2 state (same packing as rho0) at point i. */
tcljc_status tcljc_trajectory_point(const tcljc_trajectory* tr, size_t i,
                                    double* t, double rho[8]);

void tcljc_trajectory_free(tcljc_trajectory* tr);

/* ---- matched Markov solution ------------------------------------------- */

/* rho_out: tilde-frame state at time t; with_renormalizer = 0 drops the
 * initial-condition correction. */
tcljc_status tcljc_matched_solution(const tcljc_params* params, const double rho0[8],
                                    double t, int with_renormalizer, double rho_out[8]);

/* ---- config-driven front end (the CLI calls only this) ------------------ */

/* Runs one subcommand exactly like the command-line tool:
 *   subcommand in {simulate-exact, simulate-tcl, compare, cumulant-table,
 *                  polish-demo, scaling, validate}
 * config_path: path to an INI config; out_dir: NULL keeps the config value;
 * order_override: 0 keeps the config value; source_override: NULL, "analytic"
 * or "numeric"; jobs >= 1.
 * Returns the process exit code (0 ok, 1 validation, 2 config, 3 numerical).
 */
int tcljc_run(const char* subcommand, const char* config_path, const char* out_dir,
              int jobs, int order_override, const char* source_override);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* TCLJC_H */
