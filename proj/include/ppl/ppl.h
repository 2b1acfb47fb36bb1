/* SPDX-License-Identifier: MIT
 *
 * C interface of the ppl solver library.
 *
 * All functions return a ppl_status; outputs are written through pointer
 * arguments. Handles are opaque and must be released with the matching
 * destroy function. On any failure, ppl_last_error() returns a thread-local
 * human-readable message describing what went wrong.
 */
#ifndef PPL_PPL_H
#define PPL_PPL_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ppl_status {
  PPL_OK = 0,
  PPL_ERR_ARGUMENT = 1,  /* bad pointer, dimension, or parameter range */
  PPL_ERR_CONFIG = 2,    /* malformed or inconsistent configuration */
  PPL_ERR_PARSE = 3,     /* malformed data file */
  PPL_ERR_ORACLE = 4,    /* problem oracle returned non-finite values */
  PPL_ERR_DIVERGED = 5,  /* solver iterates became non-finite */
  PPL_ERR_IO = 6,        /* file could not be read or written */
  PPL_ERR_INTERNAL = 7   /* unexpected failure */
} ppl_status;

/* Static description of a status code. */
const char *ppl_status_message(ppl_status status);

/* Thread-local message of the most recent failure ("" when none). */
const char *ppl_last_error(void);

/* Library version string, e.g. "1.0.0". */
const char *ppl_version(void);

/* ---- Problems ---------------------------------------------------------- */

typedef struct ppl_problem ppl_problem;

/* 2-D disk benchmark (known solution). */
ppl_status ppl_problem_create_disk(ppl_problem **out);

/* Seeded indefinite QP with n variables and m quadratic constraints. */
ppl_status ppl_problem_create_qp(uint64_t seed, int32_t n, int32_t m,
                                 ppl_problem **out);

/* Any problem addressable by a configuration file. */
ppl_status ppl_problem_create_from_config(const char *config_path,
                                          ppl_problem **out);

void ppl_problem_destroy(ppl_problem *problem);

int32_t ppl_problem_dimension(const ppl_problem *problem);
int32_t ppl_problem_num_constraints(const ppl_problem *problem);

/* ---- Solving ----------------------------------------------------------- */

/* Plain-old-data solver options; zero-initialize then adjust, or call
 * ppl_solver_options_init for the per-method defaults. Fields set to 0 are
 * derived from the problem constants. */
typedef struct ppl_solver_options {
  double alpha, beta, eta, tau;
  double gamma0, kappa; /* non-augmented dual schedule */
  double p, q;          /* augmented dual schedule */
  double lambda_cap;    /* > 0 enables the multiplier cap */
  int64_t max_iters;
  int32_t early_stop; /* nonzero -> stop at the residual tolerances */
  double eps_stationarity, eps_feasibility, eps_complementarity;
} ppl_solver_options;

/* method: "plada" (nonsmooth-capable), "ppala" (smooth constraints),
 * or "penalty" (reference baseline). */
ppl_status ppl_solver_options_init(ppl_solver_options *options,
                                   const char *method);

typedef struct ppl_solution ppl_solution;

/* Run `method` on `problem` from x0 (NULL -> domain-box center). x0_len must
 * equal the problem dimension when x0 is given. */
ppl_status ppl_solve(const ppl_problem *problem, const char *method,
                     const ppl_solver_options *options, const double *x0,
                     int32_t x0_len, ppl_solution **out);

void ppl_solution_destroy(ppl_solution *solution);

typedef struct ppl_kkt_report {
  double stationarity, feasibility, complementarity, dual_gap;
} ppl_kkt_report;

ppl_status ppl_solution_primal(const ppl_solution *solution, double *buffer,
                               int32_t buffer_len);
ppl_status ppl_solution_final_kkt(const ppl_solution *solution,
                                  ppl_kkt_report *out);
int64_t ppl_solution_iterations(const ppl_solution *solution);
int32_t ppl_solution_converged(const ppl_solution *solution);
/* "converged" | "budget" | "diverged". */
const char *ppl_solution_stop_reason(const ppl_solution *solution);

/* Trace access: rows have the 10 CSV columns in header order. */
int64_t ppl_solution_trace_rows(const ppl_solution *solution);
ppl_status ppl_solution_trace_row(const ppl_solution *solution, int64_t row,
                                  double *out10);

/* ---- Config-driven entry points (used by the CLI) ---------------------- */

/* Strings returned through char** are heap-allocated JSON documents; release
 * them with ppl_string_free. */
void ppl_string_free(char *text);

/* Run a configured benchmark: writes trace.csv and summary.json under the
 * output directory (out_dir overrides the configured one when non-NULL;
 * seed_override >= 0 replaces the configured seed). Returns the summary
 * document and whether the run converged. */
ppl_status ppl_run_config(const char *config_path, const char *out_dir,
                          int64_t seed_override, char **summary_json,
                          int32_t *converged);

/* Run the per-iteration invariant sweep for a configuration. *pass is
 * nonzero when every asserted invariant held. */
ppl_status ppl_check_config(const char *config_path, char **report_json,
                            int32_t *pass);

/* Running-average decay report for an existing trace.csv (T = 0 -> auto). */
ppl_status ppl_rate_from_csv(const char *trace_csv_path, int64_t T,
                             char **report_json);

/* Sampled smoothness-constant estimates for a configured problem, compared
 * with the declared constants (samples = 0 -> 10000). */
ppl_status ppl_estimate_from_config(const char *config_path, int64_t samples,
                                    uint64_t seed, char **report_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PPL_PPL_H */
