// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ppl/kkt.hpp"
#include "ppl/plada.hpp"
#include "ppl/ppala.hpp"
#include "ppl/penalty.hpp"
#include "ppl/problems.hpp"

namespace ppl {

enum class Method { Plada, Ppala, Penalty };

std::string to_string(Method m);

/// Resolved run configuration. Numeric fields equal to 0 (or empty strings)
/// mean "derive the default for the selected problem/method".
struct RunConfig {
  std::string problem = "disk";  ///< disk | qp | fairness-dp | fairness-eo |
                                 ///< intersectional | mnpc
  Method method = Method::Plada;

  // Solver knobs (0 -> per-method default).
  double alpha = 0.0, beta = 0.0, eta = 0.0, tau = 0.0;
  double gamma0 = 0.0, kappa = 0.0;  // plada schedule
  double p = 0.0, q = 0.0;           // ppala schedule
  double lambda_cap = 0.0;
  std::uint64_t max_iters = 50000;
  bool early_stop = true;
  KktTolerances tol;
  std::uint64_t seed = 0;
  std::uint64_t trace_every = 1;  ///< Keep rows with iter % n == 0 (+ final).
  std::string output_dir = "ppl-out";

  // Problem knobs.
  Index qp_n = 10, qp_m = 3;
  Index rows = 500, dim = 5, clusters = 4;  // synthetic fairness data
  double tolerance_c = 0.05;
  std::string eo_formulation = "max";  ///< "max" (single) or "two" constraints.
  Index classes = 3, per_class = 100;
  std::string mnpc_kappa = "1";  ///< Comma list or single value (broadcast).
  double theta = 1.0;

  // Optional real data source.
  std::string data_path;    ///< Empty -> seeded synthetic data.
  std::string data_format;  ///< "libsvm" | "csv" (default from extension).
  std::string label_column, positive_label;
  std::string group_column, group_value;  ///< CSV text-column group source.
  Index group_feature_index = -1;         ///< Feature-threshold group source.
  double group_threshold = 0.5;
  bool normalize = false;

  // Penalty baseline knobs.
  double penalty_rho0 = 1.0, penalty_growth = 2.0;
  std::uint64_t penalty_inner = 200, penalty_outer = 12;
};

/// Parse a flat "key = value" file ('#' comments, blank lines ignored).
/// Unknown keys are ConfigErrors naming the key; so are bad values and
/// incompatible selections (ppala or penalty with a nonsmooth problem).
RunConfig load_config(const std::string &path);
RunConfig parse_config_text(const std::string &text);

/// Instantiate the configured problem (seeded, deterministic).
ProblemSpec build_problem(const RunConfig &cfg);

/// Default start point: center of the regularizer domain box (zeros for
/// unbounded domains).
Vec default_start(const ProblemSpec &p);

/// Everything run_suite produced for one configuration.
struct RunSummary {
  SolveResult result;
  std::vector<TraceRecord> trace;  ///< After trace_every subsampling.
  std::string summary_json;
};

/// Run the configured method, write <output_dir>/trace.csv and
/// <output_dir>/summary.json, and return the artifacts. Subsampling keeps
/// iter-multiple rows plus the initial and final rows. A diverged run yields
/// stop_reason "diverged" in the summary and converged = false; the
/// exception is not propagated.
RunSummary run_suite(const RunConfig &cfg);

/// Sample `draws` step rows uniformly (seeded) and report how many sit
/// within the tolerances, plus the mean sampled residuals.
struct RandomIterateReport {
  std::size_t draws = 0;
  double fraction_within_tol = 0.0;
  double mean_stationarity = 0.0;
  double mean_feasibility = 0.0;
  double mean_complementarity = 0.0;
};

RandomIterateReport random_iterate_report(const std::vector<TraceRecord> &trace,
                                          std::uint64_t seed,
                                          const KktTolerances &tol,
                                          std::size_t draws = 100);

/// Outcome of the per-iteration invariant sweep run by the `check` command.
struct CheckReport {
  std::uint64_t iterations = 0;
  std::uint64_t relations_checked = 0, relations_failed = 0;
  std::uint64_t descent_checked = 0, descent_failed = 0;
  bool descent_asserted = false;  ///< False -> descent is report-only.
  double nu_min = 0.0;            ///< Min certificate coordinate seen.
  double max_interior_nu = 0.0;   ///< Max |nu_j| over unclipped slack coords.
  double max_closure_dev = 0.0;   ///< Max |lambda-mu-rho(g+u)| and z drift.
  double merit_window_ratio = 0.0;  ///< Max consecutive window spread ratio.
  bool merit_windows_ok = true;
  bool pass = false;
};

/// Run the configured solver while checking the dual-step relations, the
/// mode-appropriate sufficient decrease, certificate nonnegativity, and the
/// post-step closure identities. Augmented runs also validate that spreads
/// of the merit value over consecutive 1000-iteration windows (after a 1e4
/// burn-in) grow by at most 2x, treating spreads under 1e-12 as converged.
/// Relations/descent start at k = 1 for the augmented mode (k = 0 for the
/// non-augmented); descent is asserted except in linearized non-augmented
/// mode, where it is reported only. Not available for Method::Penalty.
CheckReport run_invariant_checks(const RunConfig &cfg);

std::string check_report_json(const CheckReport &report);
std::string rate_report_json(const RateSummary &summary);
std::string estimate_report_json(const ConstantEstimates &sampled,
                                 const ConstantEstimates &declared);

/// Worker cap for independent suite runs: PPL_SOLVE_THREADS when set to a
/// positive integer, otherwise hardware concurrency (at least 1).
unsigned solve_thread_cap();

}  // namespace ppl
