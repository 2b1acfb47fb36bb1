// SPDX-License-Identifier: MIT
#include "ppl/plada.hpp"

#include <cmath>

#include "run_loop.hpp"

namespace ppl {

namespace {

detail::StepOutput plada_step_impl(const ProblemSpec &p, const IterateState &s,
                                   const Evaluation &eval,
                                   const PladaParams &params, double delta) {
  const double rho = params.rho();
  detail::StepOutput out;

  Vec x_next;
  if (params.x_update == PladaParams::XUpdate::Linearized) {
    const Vec direction = eval.grad_f + eval.jacobian.transpose() * s.lambda;
    x_next =
        apply_prox(p.regularizer, s.x - params.eta * direction, params.eta);
  } else {
    x_next = params.exact_x_solver(p, s, eval.grad_f, params.eta);
    if (x_next.size() != p.dimension)
      throw ContractError("exact x solver returned wrong dimension");
    if (!p.regularizer.contains(x_next))
      throw ContractError("exact x solver left the regularizer domain");
  }
  if (!x_next.allFinite())
    throw DivergenceError("primal iterate became non-finite at iteration " +
                              std::to_string(s.k),
                          s.k);

  out.u_inner = s.u - params.tau * s.lambda;
  Vec u_next = out.u_inner.cwiseMax(0.0);

  const double gap_sq = (s.lambda - s.mu).squaredNorm();
  out.coeff = std::min(params.gamma0, delta / (gap_sq + 1.0));
  Vec mu_next = s.mu + out.coeff * (s.lambda - s.mu);

  out.eval_next = evaluate_point(p, x_next);
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

PladaParams derive_plada_params(const ProblemSpec &p, PladaParams params) {
  if (!(params.alpha > 1.0))
    throw ContractError("plada: alpha must be > 1");
  if (!(params.beta > 0.0 && params.beta < 1.0))
    throw ContractError("plada: beta must lie in (0, 1)");
  if (!(params.gamma0 > 0.0 && params.gamma0 <= 1.0))
    throw ContractError("plada: gamma0 must lie in (0, 1]");
  if (!(params.kappa > 0.0 && params.kappa <= 1.0))
    throw ContractError("plada: kappa must lie in (0, 1]");
  if (!(params.lambda_cap >= 0.0))
    throw ContractError("plada: lambda_cap must be >= 0");
  if (!(params.tol.stationarity > 0.0 && params.tol.feasibility > 0.0 &&
        params.tol.complementarity > 0.0))
    throw ContractError("plada: tolerances must be > 0");
  if (params.x_update == PladaParams::XUpdate::ExactSubproblem &&
      !params.exact_x_solver)
    throw ContractError("plada: exact x-update mode requires a solver");

  const double rho = params.rho();
  const double curvature =
      p.constants.L_f + 3.0 * rho * p.constants.M_g * p.constants.M_g;
  if (params.eta == 0.0)
    params.eta = curvature > 0.0 ? 0.9 / curvature : 1.0;
  if (!(params.eta > 0.0))
    throw ContractError("plada: eta must be > 0");
  // User overrides beyond the stability ranges are accepted with a warning:
  // practical step sizes often exceed the worst-case bounds.
  if (curvature > 0.0 && params.eta >= 1.0 / curvature)
    detail::warn_step_size("plada", "eta", params.eta, 1.0 / curvature,
                           "1/(L_f + 3 rho M_g^2)");
  if (params.tau == 0.0) params.tau = 0.9 / (3.0 * rho);
  if (!(params.tau > 0.0))
    throw ContractError("plada: tau must be > 0");
  if (params.tau >= 1.0 / (3.0 * rho))
    detail::warn_step_size("plada", "tau", params.tau, 1.0 / (3.0 * rho),
                           "1/(3 rho)");
  return params;
}

double delta_schedule_plada(const PladaParams &params, std::uint64_t k) {
  return params.kappa / static_cast<double>(k + 1);
}

IterateState plada_step(const ProblemSpec &p, const IterateState &s,
                        const PladaParams &params) {
  detail::validate_state(p, s);
  const Evaluation eval = evaluate_point(p, s.x);
  const double delta = delta_schedule_plada(params, s.k);
  return plada_step_impl(p, s, eval, params, delta).next;
}

SolveResult run_plada(const ProblemSpec &p, const PladaParams &params,
                      const Vec &x0, const RunHooks &hooks) {
  const PladaParams derived = derive_plada_params(p, params);
  detail::LoopOps ops;
  ops.eta = derived.eta;
  ops.max_iters = derived.max_iters;
  ops.early_stop = derived.early_stop;
  ops.tol = derived.tol;
  ops.delta = [&derived](std::uint64_t k) {
    return delta_schedule_plada(derived, k);
  };
  ops.step = [&p, &derived](const IterateState &s, const Evaluation &eval,
                            double delta) {
    return plada_step_impl(p, s, eval, derived, delta);
  };
  ops.nu = [&derived](const IterateState &prev, const detail::StepOutput &out) {
    return build_nu_plada(prev.lambda, prev.u, out.next.u, derived.tau);
  };
  return detail::run_loop(p, x0, ops, hooks);
}

}  // namespace ppl
