// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>

#include "ppl/types.hpp"

namespace ppl {

/// Full iterate of the primal-dual loop.
///
/// Invariants maintained by the solvers: u >= 0 componentwise; with the
/// multiplier cap disabled, lambda - mu = rho * (g(x) + u) and
/// z = (lambda - mu) / alpha hold after every completed iteration.
struct IterateState {
  Vec x;       ///< Primal point (dimension n).
  Vec u;       ///< Slack vector (dimension m, nonnegative).
  Vec z;       ///< Perturbation vector (dimension m).
  Vec lambda;  ///< Multiplier estimate for g(x) + u = z (dimension m).
  Vec mu;      ///< Multiplier estimate for z = 0 (dimension m).
  std::uint64_t k = 0;  ///< Iteration counter.
};

/// Zero-initialized state at x0: u = max(0, -g(x0)), z = lambda = mu = 0.
/// `g0` must be g(x0).
IterateState make_initial_state(const Vec &x0, const Vec &g0);

}  // namespace ppl
