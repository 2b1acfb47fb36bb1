// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "ppl/kkt.hpp"
#include "ppl/state.hpp"
#include "ppl/trace.hpp"

namespace ppl {

enum class StopReason { Converged, Budget, Diverged };

std::string to_string(StopReason r);

/// Outcome of a solver run.
struct SolveResult {
  IterateState state;         ///< Final iterate.
  Vec nu;                     ///< Certificate multiplier of the last step.
  KktReport final_report;     ///< Residuals of the final iterate.
  std::uint64_t iterations = 0;  ///< Completed steps.
  double wall_sec = 0.0;
  StopReason stop_reason = StopReason::Budget;
  bool converged = false;
  std::uint64_t best_iterate = 0;  ///< Trace row minimizing the residual max.
};

/// Detailed view of one completed step, for invariant checkers and tests.
struct StepEvent {
  const IterateState &prev;
  const IterateState &next;
  double delta_k;      ///< Schedule value driving the dual step.
  double coeff;        ///< Effective mu-step coefficient used.
  const Vec &nu;       ///< Certificate multiplier of this step.
  const Vec &u_inner;  ///< Slack step before projection onto u >= 0.
  const Vec &g_next;   ///< Cached g(x_next).
  const KktReport &report;  ///< Residuals at (x_next, nu).
};

/// Optional per-run callbacks. `trace` receives every row (including the
/// initial iter = 0 row); `on_step` fires after each completed step.
struct RunHooks {
  TraceSink trace;
  std::function<void(const StepEvent &)> on_step;
};

}  // namespace ppl
