// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <functional>

#include "ppl/kkt.hpp"
#include "ppl/problem.hpp"
#include "ppl/solver_types.hpp"

namespace ppl::detail {

/// Output of one primal-dual step plus the cached oracle evaluation at the
/// new point (reused for residuals and for the next step).
struct StepOutput {
  IterateState next;
  Evaluation eval_next;
  double coeff = 0.0;  ///< Effective mu-step coefficient.
  Vec u_inner;         ///< Slack step before projection.
};

/// Mode-specific pieces of the otherwise identical run loops.
struct LoopOps {
  double eta = 0.0;
  std::uint64_t max_iters = 0;
  bool early_stop = true;
  KktTolerances tol;
  std::function<double(std::uint64_t)> delta;
  std::function<StepOutput(const IterateState &, const Evaluation &, double)>
      step;
  std::function<Vec(const IterateState &prev, const StepOutput &out)> nu;
};

/// Shared driver: initialization, trace emission, best-iterate tracking,
/// early stopping. See run_plada for the public contract.
SolveResult run_loop(const ProblemSpec &p, const Vec &x0, const LoopOps &ops,
                     const RunHooks &hooks);

/// Throw ContractError unless `s` matches the problem dimensions.
void validate_state(const ProblemSpec &p, const IterateState &s);

/// One stderr line noting a step-size override outside its stability range.
void warn_step_size(const char *solver, const char *name, double value,
                    double bound, const char *bound_formula);

}  // namespace ppl::detail
