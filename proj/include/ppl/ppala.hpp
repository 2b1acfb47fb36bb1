// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>

#include "ppl/problem.hpp"
#include "ppl/solver_types.hpp"

namespace ppl {

/// Parameters of the augmented single-loop solver (requires constraints with
/// a Lipschitz Jacobian).
struct PpalaParams {
  double alpha = 10.0;  ///< Perturbation weight, must be > 1.
  double beta = 0.2;    ///< Dual damping, must be in (0, 1).
  double eta = 0.0;   ///< Primal step; 0 selects 0.9/(L_ell + 3 rho M_g^2).
  double tau = 0.0;   ///< Slack step; 0 selects 0.9/(2 rho).
  double p = 1.0;     ///< Schedule scale: delta_k = 1/(p k^q + 1), p > 0.
  double q = 1.0;     ///< Schedule exponent, in (2/3, 1].
  double lambda_cap = 0.0;  ///< > 0 projects lambda onto [-cap, cap]; 0 off.
  std::uint64_t max_iters = 50000;
  bool early_stop = true;
  KktTolerances tol;

  double rho() const { return alpha / (1.0 + alpha * beta); }
};

/// Smoothness constant of the augmented smooth part:
/// L_ell = L_f + L_g B_lambda + rho (L_g B_u + L_g B_g + M_g^2).
double augmented_smoothness(const ConstantEstimates &c, double rho);

/// Fill derived fields (eta, tau when zero) and validate ranges. Errors:
/// ContractError on nonsmooth constraints, alpha <= 1, beta outside (0,1),
/// p <= 0, q outside (2/3, 1], or non-positive step overrides. Positive step
/// overrides beyond the stability bounds (eta >= 1/(L_ell + 3 rho M_g^2),
/// tau >= 1/(2 rho)) are accepted with a warning on stderr.
PpalaParams derive_ppala_params(const ProblemSpec &p, PpalaParams params);

/// delta_k = 1 / (p k^q + 1).
double delta_schedule_ppala(const PpalaParams &params, std::uint64_t k);

/// Gradient in x of the smooth part of the augmented merit:
/// grad f(x) + J_g(x)^T (lambda + rho (g(x) + u)).
Vec grad_ppal_x(const ProblemSpec &p, const Vec &x, const Vec &u,
                const Vec &lambda, double rho);

/// One iteration (augmented primal prox step, projected augmented slack step
/// using g at the new point, damped dual step, multiplier closure,
/// perturbation refresh). Evaluates the oracles fresh.
IterateState ppala_step(const ProblemSpec &p, const IterateState &s,
                        const PpalaParams &params);

/// Run the loop from x0 (see run_plada for the common contract).
SolveResult run_ppala(const ProblemSpec &p, const PpalaParams &params,
                      const Vec &x0, const RunHooks &hooks = {});

}  // namespace ppl
