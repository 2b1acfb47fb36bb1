// SPDX-License-Identifier: MIT
#include "ppl/ppala.hpp"

#include <cmath>

#include "run_loop.hpp"

namespace ppl {

namespace {

detail::StepOutput ppala_step_impl(const ProblemSpec &p, const IterateState &s,
                                   const Evaluation &eval,
                                   const PpalaParams &params, double delta) {
  const double rho = params.rho();
  detail::StepOutput out;

  const Vec direction =
      eval.grad_f + eval.jacobian.transpose() * (s.lambda + rho * (eval.g + s.u));
  Vec x_next =
      apply_prox(p.regularizer, s.x - params.eta * direction, params.eta);
  if (!x_next.allFinite())
    throw DivergenceError("primal iterate became non-finite at iteration " +
                              std::to_string(s.k),
                          s.k);

  out.eval_next = evaluate_point(p, x_next);
  // Slack step uses g at the new primal point but the old slack.
  out.u_inner =
      s.u - params.tau * (s.lambda + rho * (out.eval_next.g + s.u));
  Vec u_next = out.u_inner.cwiseMax(0.0);

  const double gap_sq = (s.lambda - s.mu).squaredNorm();
  out.coeff = delta / (gap_sq + 1.0);
  Vec mu_next = s.mu + out.coeff * (s.lambda - s.mu);

  Vec lambda_next = mu_next + rho * (out.eval_next.g + u_next);
  if (params.lambda_cap > 0.0)
    lambda_next =
        lambda_next.cwiseMax(-params.lambda_cap).cwiseMin(params.lambda_cap);
  Vec z_next = (lambda_next - mu_next) / params.alpha;

  if (!u_next.allFinite() || !mu_next.allFinite() ||
      !lambda_next.allFinite() || !z_next.allFinite())
    throw DivergenceError("dual iterates became non-finite at iteration " +
                              std::to_string(s.k),
                          s.k);

  out.next.x = std::move(x_next);
  out.next.u = std::move(u_next);
  out.next.z = std::move(z_next);
  out.next.lambda = std::move(lambda_next);
  out.next.mu = std::move(mu_next);
  out.next.k = s.k + 1;
  return out;
}

}  // namespace

double augmented_smoothness(const ConstantEstimates &c, double rho) {
  return c.L_f + c.L_g * c.B_lambda +
         rho * (c.L_g * c.B_u + c.L_g * c.B_g + c.M_g * c.M_g);
}

PpalaParams derive_ppala_params(const ProblemSpec &p, PpalaParams params) {
  if (!p.smooth_constraints)
    throw ContractError(
        "ppala requires constraints with a Lipschitz Jacobian; use plada for "
        "nonsmooth constraints");
  if (!(params.alpha > 1.0))
    throw ContractError("ppala: alpha must be > 1");
  if (!(params.beta > 0.0 && params.beta < 1.0))
    throw ContractError("ppala: beta must lie in (0, 1)");
  if (!(params.p > 0.0))
    throw ContractError("ppala: schedule scale p must be > 0");
  if (!(params.q > 2.0 / 3.0 && params.q <= 1.0))
    throw ContractError("ppala: schedule exponent q must lie in (2/3, 1]");
  if (!(params.lambda_cap >= 0.0))
    throw ContractError("ppala: lambda_cap must be >= 0");
  if (!(params.tol.stationarity > 0.0 && params.tol.feasibility > 0.0 &&
        params.tol.complementarity > 0.0))
    throw ContractError("ppala: tolerances must be > 0");

  const double rho = params.rho();
  const double curvature = augmented_smoothness(p.constants, rho) +
                           3.0 * rho * p.constants.M_g * p.constants.M_g;
  if (params.eta == 0.0)
    params.eta = curvature > 0.0 ? 0.9 / curvature : 1.0;
  if (!(params.eta > 0.0))
    throw ContractError("ppala: eta must be > 0");
  if (curvature > 0.0 && params.eta >= 1.0 / curvature)
    detail::warn_step_size("ppala", "eta", params.eta, 1.0 / curvature,
                           "1/(L_ell + 3 rho M_g^2)");
  if (params.tau == 0.0) params.tau = 0.9 / (2.0 * rho);
  if (!(params.tau > 0.0))
    throw ContractError("ppala: tau must be > 0");
  if (params.tau >= 1.0 / (2.0 * rho))
    detail::warn_step_size("ppala", "tau", params.tau, 1.0 / (2.0 * rho),
                           "1/(2 rho)");
  return params;
}

double delta_schedule_ppala(const PpalaParams &params, std::uint64_t k) {
  return 1.0 /
         (params.p * std::pow(static_cast<double>(k), params.q) + 1.0);
}

Vec grad_ppal_x(const ProblemSpec &p, const Vec &x, const Vec &u,
                const Vec &lambda, double rho) {
  if (u.size() != p.num_constraints || lambda.size() != p.num_constraints)
    throw ContractError("grad_ppal_x: dual block has wrong dimension");
  if (!(rho > 0.0)) throw ContractError("grad_ppal_x: rho must be > 0");
  const Evaluation eval = evaluate_point(p, x);
  return eval.grad_f + eval.jacobian.transpose() * (lambda + rho * (eval.g + u));
}

IterateState ppala_step(const ProblemSpec &p, const IterateState &s,
                        const PpalaParams &params) {
  detail::validate_state(p, s);
  const Evaluation eval = evaluate_point(p, s.x);
  const double delta = delta_schedule_ppala(params, s.k);
  return ppala_step_impl(p, s, eval, params, delta).next;
}

SolveResult run_ppala(const ProblemSpec &p, const PpalaParams &params,
                      const Vec &x0, const RunHooks &hooks) {
  const PpalaParams derived = derive_ppala_params(p, params);
  detail::LoopOps ops;
  ops.eta = derived.eta;
  ops.max_iters = derived.max_iters;
  ops.early_stop = derived.early_stop;
  ops.tol = derived.tol;
  ops.delta = [&derived](std::uint64_t k) {
    return delta_schedule_ppala(derived, k);
  };
  ops.step = [&p, &derived](const IterateState &s, const Evaluation &eval,
                            double delta) {
    return ppala_step_impl(p, s, eval, derived, delta);
  };
  ops.nu = [&derived](const IterateState &prev, const detail::StepOutput &out) {
    return build_nu_ppala(prev.lambda, out.next.lambda, out.next.mu, prev.u,
                          out.next.u, derived.tau, derived.rho());
  };
  return detail::run_loop(p, x0, ops, hooks);
}

}  // namespace ppl
