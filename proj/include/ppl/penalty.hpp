// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>

#include "ppl/problem.hpp"
#include "ppl/solver_types.hpp"

namespace ppl {

/// Schedule of the quadratic-penalty reference method.
struct PenaltySchedule {
  double rho0 = 1.0;      ///< Initial penalty weight, > 0.
  double growth = 2.0;    ///< Multiplier per round, > 1.
  std::uint64_t inner_iters = 200;  ///< Prox-gradient steps per round.
  std::uint64_t outer_rounds = 12;
  KktTolerances tol;
  bool early_stop = true;
};

/// Classical baseline: outer rounds minimize
///   f(x) + (rho_t / 2) ||max(0, g(x))||^2 + r(x)
/// by proximal gradient, then rho_{t+1} = growth * rho_t. Trace rows use the
/// multiplier estimate nu = rho_t * max(0, g(x)); the solver duals stay at
/// that estimate (dual_gap column is 0). Pre: smooth constraints, x0 in the
/// regularizer domain. Errors: as run_plada.
SolveResult quadratic_penalty_baseline(const ProblemSpec &p,
                                       const PenaltySchedule &schedule,
                                       const Vec &x0,
                                       const RunHooks &hooks = {});

}  // namespace ppl
