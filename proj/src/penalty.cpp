// SPDX-License-Identifier: MIT
#include "ppl/penalty.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "run_loop.hpp"

namespace ppl {

SolveResult quadratic_penalty_baseline(const ProblemSpec &p,
                                       const PenaltySchedule &schedule,
                                       const Vec &x0, const RunHooks &hooks) {
  if (!p.smooth_constraints)
    throw ContractError(
        "quadratic penalty baseline requires smooth constraints");
  if (!(schedule.rho0 > 0.0) || !(schedule.growth > 1.0))
    throw ContractError("penalty: rho0 must be > 0 and growth > 1");
  if (schedule.inner_iters == 0 || schedule.outer_rounds == 0)
    throw ContractError("penalty: inner_iters and outer_rounds must be > 0");
  if (x0.size() != p.dimension)
    throw ContractError("penalty: start point has wrong dimension");
  if (!p.regularizer.contains(x0))
    throw ContractError("penalty: start point lies outside the domain");

  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&t0]() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  };

  Vec x = x0;
  Evaluation eval = evaluate_point(p, x);
  double rho = schedule.rho0;

  auto report_at = [&](const Evaluation &e, const Vec &point, double weight,
                       double eta_ref) {
    const Vec nu = weight * e.g.cwiseMax(0.0);
    return std::make_pair(
        nu, detail::kkt_residuals_cached(p, point, e, nu, eta_ref, 0.0));
  };

  auto emit = [&](std::uint64_t iter, const Evaluation &e, const Vec &point,
                  const KktReport &r, const Vec &nu) {
    if (!hooks.trace) return;
    TraceRecord row;
    row.iter = iter;
    row.elapsed_sec = elapsed();
    row.objective = e.f + p.regularizer.value(point);
    row.feasibility = r.feasibility;
    row.stationarity = r.stationarity;
    row.complementarity = r.complementarity;
    row.dual_gap = 0.0;
    row.lambda_norm = nu.norm();
    row.mu_norm = 0.0;
    row.delta_k = 0.0;
    hooks.trace(row);
  };

  auto step_size = [&p](double weight) {
    const double curvature =
        p.constants.L_f +
        weight * (p.constants.M_g * p.constants.M_g +
                  p.constants.L_g * p.constants.B_g);
    return curvature > 0.0 ? 0.9 / curvature : 1.0;
  };

  auto [nu, report] = report_at(eval, x, rho, step_size(rho));
  emit(0, eval, x, report, nu);

  std::uint64_t iter = 0;
  StopReason reason = StopReason::Budget;
  bool done = false;
  for (std::uint64_t round = 0; round < schedule.outer_rounds && !done;
       ++round) {
    const double eta = step_size(rho);
    for (std::uint64_t inner = 0; inner < schedule.inner_iters; ++inner) {
      const Vec grad_penalty =
          eval.grad_f + rho * (eval.jacobian.transpose() * eval.g.cwiseMax(0.0));
      Vec x_next = apply_prox(p.regularizer, x - eta * grad_penalty, eta);
      if (!x_next.allFinite())
        throw DivergenceError(
            "penalty iterate became non-finite at iteration " +
                std::to_string(iter),
            iter);
      x = std::move(x_next);
      eval = evaluate_point(p, x);
      ++iter;
      std::tie(nu, report) = report_at(eval, x, rho, eta);
      emit(iter, eval, x, report, nu);
      if (schedule.early_stop && report.within(schedule.tol)) {
        reason = StopReason::Converged;
        done = true;
        break;
      }
    }
    rho *= schedule.growth;
  }

  SolveResult result;
  result.state.x = x;
  result.state.u = (-eval.g).cwiseMax(0.0);
  result.state.z = Vec::Zero(p.num_constraints);
  result.state.lambda = nu;
  result.state.mu = nu;
  result.state.k = iter;
  result.nu = nu;
  result.final_report = report;
  result.iterations = iter;
  result.wall_sec = elapsed();
  result.stop_reason = reason;
  result.converged = report.within(schedule.tol);
  result.best_iterate = iter;
  return result;
}

}  // namespace ppl
