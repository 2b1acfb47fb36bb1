// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ppl/data.hpp"
#include "ppl/problem.hpp"

namespace ppl {

/// 2-D benchmark with a known solution: min x1 + x2 s.t. ||x||^2 <= 1,
/// box domain [-2, 2]^2. Optimum x* = (-1/sqrt(2), -1/sqrt(2)) with
/// multiplier nu* = 1/sqrt(2). Exact constants.
ProblemSpec make_disk_problem();

/// Seeded indefinite quadratic program:
///   f(x) = x^T Q x / 2 + c^T x,  g_j(x) = x^T A_j x / 2 + b_j^T x - 1/2,
/// with eigenvalues of Q and A_j in [-1, 1] forced indefinite, box domain
/// [-1, 1]^n. g(0) = -1/2 so the box center is strictly feasible. Constants
/// are closed-form bounds from the planted eigenvalues. Pre: 2 <= n <= 50,
/// 1 <= m <= 10.
ProblemSpec make_nonconvex_qp(std::uint64_t seed, Index n, Index m);

/// Constraint families for the fairness-constrained logistic problems.
enum class FairnessConstraint {
  DemographicParity,  ///< | mean_p sigma(w.x) - mean_u sigma(w.x) | <= c
  EqualOpportunity,   ///< max over label-conditioned score gaps <= c
  Intersectional,     ///< per-group hinge-risk deviations <= c
};

struct FairnessOptions {
  double tolerance_c = 0.05;      ///< Constraint slack c.
  double box_halfwidth = 100.0;   ///< Weight domain [-h, h]^d.
  std::string group = "group";    ///< Mask name for DP / EO.
  std::vector<std::string> intersectional_masks;  ///< One constraint each.
  /// EO only: false -> one constraint max(|gap_pos|, |gap_neg|) - c;
  /// true -> two constraints |gap_pos| - c and |gap_neg| - c.
  bool eo_two_constraints = false;
};

/// Logistic loss f(w) = mean_i log(1 + exp(-y_i w.x_i)) with the selected
/// nonsmooth fairness constraint (deterministic subgradient selection:
/// max-type ties break toward the lowest listed branch). Requires the masks
/// named in `opts` (DP/EO: group and group_c plus the label-conditioned
/// four; Intersectional: each listed mask). Errors: ContractError on a
/// missing or empty mask.
ProblemSpec make_fairness_logistic(const Dataset &data,
                                   FairnessConstraint constraint,
                                   const FairnessOptions &opts);

/// Logistic loss with one hinge-risk deviation constraint per listed group
/// mask: g_G(w) = mean_G [1 - y w.x]+ - mean_all [1 - y w.x]+ - c. Shorthand
/// for make_fairness_logistic with the Intersectional constraint.
ProblemSpec make_intersectional(const Dataset &data,
                                const std::vector<std::string> &groups,
                                const FairnessOptions &opts);

/// Multi-class pairwise-score problem on seeded Gaussian class-conditional
/// data: stacked per-class linear scorers (classes * dim weights), sigmoid
/// surrogate phi(t) = 1/(1+exp(t)); the class-1 surrogate risk is minimized
/// subject to one budget constraint per remaining class (level kappa[i]).
/// Domain ||x||_inf <= theta. kappa holds classes-1 entries (or one entry,
/// broadcast). Smooth; exact constant bounds from the sampled features.
/// Pre: classes >= 2, per_class >= 2, dim >= 2, theta > 0, kappa > 0.
ProblemSpec make_mnpc_linear(std::uint64_t seed, Index classes,
                             Index per_class, const Vec &kappa, double theta,
                             Index dim = 5);

/// Seeded synthetic dataset for the fairness problems: group-shifted
/// Gaussian features, labels from a planted logistic model (both labels and
/// group membership guaranteed non-degenerate). Provides masks "group",
/// "group_c", the four label-conditioned intersections, and a `clusters`-way
/// partition "cluster0".."cluster{k-1}" for intersectional constraints.
/// Pre: rows >= 8, dim >= 2, clusters >= 2.
Dataset make_synthetic_fairness_data(std::uint64_t seed, Index rows, Index dim,
                                     Index clusters = 4);

}  // namespace ppl
