// SPDX-License-Identifier: MIT
#include "run_loop.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>

namespace ppl::detail {

void warn_step_size(const char *solver, const char *name, double value,
                    double bound, const char *bound_formula) {
  std::fprintf(stderr,
               "%s: warning: %s = %g exceeds the stability bound %g (%s); "
               "accepting the override\n",
               solver, name, value, bound, bound_formula);
}

void validate_state(const ProblemSpec &p, const IterateState &s) {
  if (s.x.size() != p.dimension)
    throw ContractError("iterate state: x has wrong dimension");
  if (s.u.size() != p.num_constraints || s.z.size() != p.num_constraints ||
      s.lambda.size() != p.num_constraints ||
      s.mu.size() != p.num_constraints)
    throw ContractError("iterate state: dual block has wrong dimension");
}

SolveResult run_loop(const ProblemSpec &p, const Vec &x0, const LoopOps &ops,
                     const RunHooks &hooks) {
  if (x0.size() != p.dimension)
    throw ContractError("start point has dimension " +
                        std::to_string(x0.size()) + ", expected " +
                        std::to_string(p.dimension));
  if (!p.regularizer.contains(x0))
    throw ContractError("start point lies outside the regularizer domain");

  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&t0]() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  };

  Evaluation eval = evaluate_point(p, x0);
  IterateState state = make_initial_state(x0, eval.g);
  Vec nu = Vec::Zero(p.num_constraints);
  KktReport report =
      detail::kkt_residuals_cached(p, state.x, eval, nu, ops.eta, 0.0);

  auto emit = [&](std::uint64_t iter, const IterateState &s,
                  const Evaluation &e, const KktReport &r, double delta) {
    if (!hooks.trace) return;
    TraceRecord row;
    row.iter = iter;
    row.elapsed_sec = elapsed();
    row.objective = e.f + p.regularizer.value(s.x);
    row.feasibility = r.feasibility;
    row.stationarity = r.stationarity;
    row.complementarity = r.complementarity;
    row.dual_gap = r.dual_gap;
    row.lambda_norm = s.lambda.norm();
    row.mu_norm = s.mu.norm();
    row.delta_k = delta;
    hooks.trace(row);
  };

  emit(0, state, eval, report, ops.delta(0));

  auto score = [](const KktReport &r) {
    return std::max({r.stationarity, r.feasibility, r.complementarity});
  };
  double best_score = score(report);
  std::uint64_t best_iterate = 0;

  std::uint64_t completed = 0;
  StopReason reason = StopReason::Budget;
  for (std::uint64_t k = 0; k < ops.max_iters; ++k) {
    const double delta = ops.delta(k);
    StepOutput out = ops.step(state, eval, delta);
    nu = ops.nu(state, out);
    report = detail::kkt_residuals_cached(
        p, out.next.x, out.eval_next, nu, ops.eta,
        (out.next.lambda - out.next.mu).norm());
    emit(k + 1, out.next, out.eval_next, report, delta);
    if (hooks.on_step) {
      const StepEvent event{state,       out.next,        delta,
                            out.coeff,   nu,              out.u_inner,
                            out.eval_next.g, report};
      hooks.on_step(event);
    }
    if (score(report) < best_score) {
      best_score = score(report);
      best_iterate = k + 1;
    }
    state = std::move(out.next);
    eval = std::move(out.eval_next);
    completed = k + 1;
    if (ops.early_stop && report.within(ops.tol)) {
      reason = StopReason::Converged;
      break;
    }
  }

  SolveResult result;
  result.converged = report.within(ops.tol);
  result.state = std::move(state);
  result.nu = std::move(nu);
  result.final_report = report;
  result.iterations = completed;
  result.wall_sec = elapsed();
  result.stop_reason = reason;
  result.best_iterate = best_iterate;
  return result;
}

}  // namespace ppl::detail
