// SPDX-License-Identifier: MIT
#pragma once

#include <cstddef>
#include <vector>

#include "ppl/problem.hpp"
#include "ppl/state.hpp"
#include "ppl/trace.hpp"
#include "ppl/types.hpp"

namespace ppl {

enum class SolverMode { Plada, Ppala };

/// Acceptance thresholds for the three approximate-KKT residuals.
struct KktTolerances {
  double stationarity = 1e-3;
  double feasibility = 1e-3;
  double complementarity = 1e-3;
};

/// Approximate-KKT residuals of a primal point paired with a certificate
/// multiplier nu (and optionally the solver duals for the gap column).
struct KktReport {
  double stationarity = 0.0;     ///< (1/eta)||x - prox_{eta r}(x - eta (grad f + J^T nu))||.
  double feasibility = 0.0;      ///< ||max(0, g(x))||_2.
  double complementarity = 0.0;  ///< sum_j |nu_j * g_j(x)|.
  double dual_gap = 0.0;         ///< ||lambda - mu||_2 (0 when duals absent).

  bool within(const KktTolerances &tol) const {
    return stationarity <= tol.stationarity && feasibility <= tol.feasibility &&
           complementarity <= tol.complementarity;
  }
};

/// Residuals at a bare point. nu must have m nonnegative entries; values in
/// [-1e-10, 0) are clamped to zero, anything lower is a ContractError.
/// eta_ref > 0 scales the prox-gradient stationarity surrogate.
KktReport kkt_residuals(const ProblemSpec &p, const Vec &x, const Vec &nu,
                        double eta_ref);

/// Residuals at a solver state; dual_gap = ||lambda - mu||.
KktReport kkt_residuals(const ProblemSpec &p, const IterateState &s,
                        const Vec &nu, double eta_ref);

namespace detail {
/// Cached-evaluation variant used by the run loops (no re-evaluation).
KktReport kkt_residuals_cached(const ProblemSpec &p, const Vec &x,
                               const Evaluation &eval_at_x, const Vec &nu,
                               double eta_ref, double dual_gap);
}  // namespace detail

/// Certificate multiplier for the non-augmented solver:
///   nu = lambda + (u_next - u_prev) / tau.
/// Pre: u_next produced from (u_prev, lambda, tau) by the projected slack
/// step, so nu >= 0 up to roundoff. Errors: ContractError if any coordinate
/// falls below -1e-10 or dimensions mismatch.
Vec build_nu_plada(const Vec &lambda, const Vec &u_prev, const Vec &u_next,
                   double tau);

/// Certificate multiplier for the augmented solver:
///   nu = lambda_prev + lambda_next - mu_next + (1/tau - rho)(u_next - u_prev).
/// Same nonnegativity contract as build_nu_plada.
Vec build_nu_ppala(const Vec &lambda_prev, const Vec &lambda_next,
                   const Vec &mu_next, const Vec &u_prev, const Vec &u_next,
                   double tau, double rho);

/// Merit value of the non-augmented loop, computed fresh from the oracles:
///   f(x) + <lambda, g(x)+u-z> + <mu, z> + (alpha/2)||z||^2
///   - (beta/2)||lambda-mu||^2 + r(x).
/// Errors: ContractError when x is outside the regularizer domain.
double eval_p_lagrangian(const ProblemSpec &p, const IterateState &s,
                         double alpha, double beta);

/// Merit value of the augmented loop: eval_p_lagrangian plus
/// (rho/2)||g(x)+u||^2 with rho = alpha/(1+alpha*beta).
double eval_ppal(const ProblemSpec &p, const IterateState &s, double alpha,
                 double beta);

/// Per-iteration dual bookkeeping identities (checked to 1e-9):
///  - mu_step_bound:    ||mu_next - mu_prev||^2 <= delta_k^2 / 4
///  - coeff_bound:      coeff * ||lambda - mu||^2 <= delta_k
///  - contraction:      ||mu_next - lambda_prev|| = (1-coeff)||lambda - mu||
///  - lambda_step_bound (mode-specific upper bound on ||lambda_next - lambda||^2)
struct RelationReport {
  bool mu_step_bound = false;
  bool coeff_bound = false;
  bool contraction = false;
  bool lambda_step_bound = false;
  double coeff = 0.0;  ///< Recomputed dual-step coefficient.

  bool all() const {
    return mu_step_bound && coeff_bound && contraction && lambda_step_bound;
  }
};

/// Recompute the dual-step coefficient from `prev` and validate the four
/// iterate relations. `gamma_cap` is the coefficient cap (<= 0 means
/// uncapped, as in the augmented mode); `M_g` bounds the constraint Jacobian
/// norm. Pre: states are consecutive, delta_k > 0, rho > 0.
RelationReport check_iterate_relations(const IterateState &prev,
                                       const IterateState &next, double rho,
                                       double gamma_cap, double M_g,
                                       double delta_k, SolverMode mode);

/// Sufficient-decrease verdict for one iteration of either loop.
struct DescentCheck {
  bool pass = false;
  double slack = 0.0;      ///< bound - (L_next - L_prev); >= 0 iff pass.
  double c1 = 0.0;         ///< Primal decrease coefficient.
  double c2 = 0.0;         ///< Slack decrease coefficient.
  double delta_hat = 0.0;  ///< Dual-drift allowance added to the bound.
};

/// Check L_next - L_prev <= -c1*dx^2 - c2*du^2 + delta_hat + 1e-9 where the
/// coefficients depend on the mode:
///  - Plada: c1 = (1/eta - L_f - 3 rho M_g^2)/2, c2 = (1/tau - 3 rho)/2,
///           delta_hat = delta_k^2/(2 rho) + delta_k/rho.
///  - Ppala: c1 = (1/eta - L_ell - 3 rho M_g^2)/2 with
///           L_ell = L_f + L_g B_lambda + rho (L_g B_u + L_g B_g + M_g^2),
///           c2 = 1/tau - 2 rho, delta_hat = delta_k^2/(4 rho) + delta_k/rho.
DescentCheck check_descent(double L_prev, double L_next, double dx_norm,
                           double du_norm, const ConstantEstimates &constants,
                           double eta, double tau, double rho, double delta_k,
                           SolverMode mode);

/// Running-average decay summary over a trace. Averages are taken over step
/// rows only (any leading iter = 0 row is skipped): squared stationarity,
/// squared feasibility, and plain complementarity over the first T and the
/// first 4T rows, plus their 4T/T ratios.
struct RateSummary {
  bool insufficient = false;  ///< Trace shorter than 4 usable rows.
  std::size_t T = 0;
  double stationarity_sq_avg_T = 0.0, stationarity_sq_avg_4T = 0.0;
  double feasibility_sq_avg_T = 0.0, feasibility_sq_avg_4T = 0.0;
  double complementarity_avg_T = 0.0, complementarity_avg_4T = 0.0;
  double stationarity_ratio = 0.0;
  double feasibility_ratio = 0.0;
  double complementarity_ratio = 0.0;
  /// A 0/0 ratio (residual identically zero in both windows) is reported as
  /// converged instead of a number.
  bool stationarity_converged = false;
  bool feasibility_converged = false;
  bool complementarity_converged = false;
};

/// T = 0 selects floor(usable_rows / 4). When T is given explicitly the trace
/// must contain at least 4T usable rows, otherwise the summary is marked
/// insufficient.
RateSummary rate_summary(const std::vector<TraceRecord> &trace,
                         std::size_t T = 0);

}  // namespace ppl
