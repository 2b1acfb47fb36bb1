// SPDX-License-Identifier: MIT
#include "ppl/state.hpp"

namespace ppl {

IterateState make_initial_state(const Vec &x0, const Vec &g0) {
  IterateState s;
  s.x = x0;
  s.u = (-g0).cwiseMax(0.0);
  s.z = Vec::Zero(g0.size());
  s.lambda = Vec::Zero(g0.size());
  s.mu = Vec::Zero(g0.size());
  s.k = 0;
  return s;
}

}  // namespace ppl
