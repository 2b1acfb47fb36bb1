// SPDX-License-Identifier: MIT
//
// Shared helpers for the unit tests: tiny hand-built problems and a central
// finite-difference checker.
#pragma once

#include <cmath>
#include <functional>

#include "ppl/problem.hpp"
#include "rng.hpp"

namespace ppl::test {

/// 1-D toy used by the hand-simulated step examples:
/// f(x) = x, g(x) = x, box [-1, 1]. Exact constants.
inline ProblemSpec make_line_toy() {
  ProblemSpec p;
  p.name = "line-toy";
  p.dimension = 1;
  p.num_constraints = 1;
  p.objective = [](const Vec &x) {
    ObjectiveEval eval;
    eval.value = x(0);
    eval.gradient = Vec::Ones(1);
    return eval;
  };
  p.constraints = [](const Vec &x) {
    ConstraintEval eval;
    eval.values = x;
    eval.jacobian = Mat::Ones(1, 1);
    return eval;
  };
  p.regularizer = Regularizer::box(-Vec::Ones(1), Vec::Ones(1));
  p.constants.L_f = 0.0;
  p.constants.L_g = 0.0;
  p.constants.M_g = 1.0;
  p.constants.B_g = 1.0;
  p.constants.B_u = 1.0;
  p.constants.B_lambda = 10.0;
  p.smooth_constraints = true;
  return p;
}

/// Strictly feasible quadratic: f(x) = ||x - c||^2 / 2, g(x) = -1.
/// The constraint is never active, so the solution is x = c with nu = 0.
inline ProblemSpec make_inactive_toy(const Vec &center, double halfwidth) {
  ProblemSpec p;
  p.name = "inactive-toy";
  p.dimension = center.size();
  p.num_constraints = 1;
  p.objective = [center](const Vec &x) {
    ObjectiveEval eval;
    eval.value = 0.5 * (x - center).squaredNorm();
    eval.gradient = x - center;
    return eval;
  };
  p.constraints = [n = center.size()](const Vec &) {
    ConstraintEval eval;
    eval.values = -Vec::Ones(1);
    eval.jacobian = Mat::Zero(1, n);
    return eval;
  };
  p.regularizer = Regularizer::box(Vec::Constant(center.size(), -halfwidth),
                                   Vec::Constant(center.size(), halfwidth));
  p.constants.L_f = 1.0;
  p.constants.L_g = 0.0;
  p.constants.M_g = 0.0;
  p.constants.B_g = 1.0;
  p.constants.B_u = 1.0;
  p.constants.B_lambda = 1.0;
  p.smooth_constraints = true;
  return p;
}

/// Max relative error between the analytic gradient and a central
/// finite difference with step 1e-6 * (1 + ||x||).
inline double gradient_fd_error(const std::function<double(const Vec &)> &f,
                                const Vec &grad, const Vec &x) {
  const double h = 1e-6 * (1.0 + x.norm());
  double worst = 0.0;
  for (Index i = 0; i < x.size(); ++i) {
    Vec lo = x, hi = x;
    lo(i) -= h;
    hi(i) += h;
    const double fd = (f(hi) - f(lo)) / (2.0 * h);
    const double scale = std::max({1.0, std::abs(fd), std::abs(grad(i))});
    worst = std::max(worst, std::abs(fd - grad(i)) / scale);
  }
  return worst;
}

/// Uniform point in the regularizer box, pulled `margin` toward the center
/// so finite differences stay inside the domain.
inline Vec interior_point(const ProblemSpec &p, detail::Rng &rng,
                          double margin = 0.9) {
  Vec x(p.dimension);
  for (Index i = 0; i < p.dimension; ++i) {
    const double lo = p.regularizer.kind == Regularizer::Kind::Box
                          ? p.regularizer.lower(i)
                          : -1.0;
    const double hi = p.regularizer.kind == Regularizer::Kind::Box
                          ? p.regularizer.upper(i)
                          : 1.0;
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo) * margin;
    x(i) = mid + (2.0 * rng.uniform01() - 1.0) * half;
  }
  return x;
}

}  // namespace ppl::test
