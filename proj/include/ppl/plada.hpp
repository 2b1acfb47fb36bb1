// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <functional>

#include "ppl/problem.hpp"
#include "ppl/solver_types.hpp"

namespace ppl {

/// Parameters of the non-augmented single-loop solver (handles nonsmooth
/// constraints through deterministic subgradient selections).
struct PladaParams {
  double alpha = 10.0;  ///< Perturbation weight, must be > 1.
  double beta = 0.1;    ///< Dual damping, must be in (0, 1).
  double eta = 0.0;     ///< Primal step; 0 selects 0.9/(L_f + 3 rho M_g^2).
  double tau = 0.0;     ///< Slack step; 0 selects 0.9/(3 rho).
  double gamma0 = 0.1;  ///< Dual-step coefficient cap, in (0, 1].
  double kappa = 1.0;   ///< Schedule scale: delta_k = kappa/(k+1), in (0, 1].
  double lambda_cap = 0.0;  ///< > 0 projects lambda onto [-cap, cap]; 0 off.
  std::uint64_t max_iters = 50000;
  bool early_stop = true;  ///< Stop once residuals fall within `tol`.
  KktTolerances tol;

  /// Primal update mode. Linearized (default) takes a proximal gradient step
  /// on f + <lambda, g>. ExactSubproblem delegates to `exact_x_solver`, which
  /// must return argmin_x { <grad_f, x> + <lambda, g(x)> +
  /// ||x - x_k||^2/(2 eta) + r(x) }.
  enum class XUpdate { Linearized, ExactSubproblem };
  XUpdate x_update = XUpdate::Linearized;
  std::function<Vec(const ProblemSpec &, const IterateState &,
                    const Vec &grad_f, double eta)>
      exact_x_solver;

  double rho() const { return alpha / (1.0 + alpha * beta); }
};

/// Fill derived fields (eta, tau when zero) from the problem constants and
/// validate ranges. Errors: ContractError on alpha <= 1, beta outside (0,1),
/// gamma0/kappa outside (0,1], non-positive step overrides, or
/// ExactSubproblem mode without a solver. Positive step overrides beyond the
/// stability bounds (eta >= 1/(L_f + 3 rho M_g^2), tau >= 1/(3 rho)) are
/// accepted with a warning on stderr.
PladaParams derive_plada_params(const ProblemSpec &p, PladaParams params);

/// delta_k = kappa / (k + 1).
double delta_schedule_plada(const PladaParams &params, std::uint64_t k);

/// One iteration (primal prox step, projected slack step, damped dual step,
/// multiplier closure, perturbation refresh). Evaluates the oracles fresh;
/// the run loop uses an internal cached variant. Errors: DivergenceError if
/// the new iterate is non-finite.
IterateState plada_step(const ProblemSpec &p, const IterateState &s,
                        const PladaParams &params);

/// Run the loop from x0 (must lie in the regularizer domain). Initial state:
/// u = max(0, -g(x0)), z = lambda = mu = 0. Emits one trace row per
/// iteration plus the initial row. Errors: ContractError on bad x0 or
/// parameter validation failure; DivergenceError (with iteration index) if
/// iterates become non-finite; OracleError propagates.
SolveResult run_plada(const ProblemSpec &p, const PladaParams &params,
                      const Vec &x0, const RunHooks &hooks = {});

}  // namespace ppl
