// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "ppl/types.hpp"

namespace ppl {

/// Separable regularizer r(x) with a closed-form proximal map.
///
/// Three kinds are supported:
///  - Zero:  r = 0 everywhere, prox = identity.
///  - Box:   r = indicator of [lower, upper], prox = componentwise clip.
///  - L1:    r = weight * ||x||_1, prox = soft-threshold by step*weight.
struct Regularizer {
  enum class Kind { Zero, Box, L1 };

  Kind kind = Kind::Zero;
  Vec lower;            ///< Box lower bounds (Kind::Box only).
  Vec upper;            ///< Box upper bounds (Kind::Box only).
  double weight = 0.0;  ///< L1 weight (Kind::L1 only), must be >= 0.

  static Regularizer zero() { return {}; }
  static Regularizer box(Vec lo, Vec hi);
  static Regularizer l1(double weight);

  /// r(x); 0 for Zero, 0 or +inf for Box, weight*||x||_1 for L1.
  double value(const Vec &x) const;
  /// True when x lies in the effective domain of r.
  bool contains(const Vec &x) const;
  /// True when the effective domain is a bounded set (Box only).
  bool bounded_domain() const { return kind == Kind::Box; }
  /// Center of the domain box (zeros for unbounded kinds).
  Vec domain_center(Index dim) const;
};

/// argmin_v { r(v) + ||v - y||^2 / (2*step) }, componentwise closed form.
/// Pre: step > 0; box bounds sized like y when kind == Box.
Vec apply_prox(const Regularizer &r, const Vec &y, double step);

/// Smoothness constants used to derive step sizes and to check descent.
/// All entries are nonnegative; provenance records how they were obtained.
struct ConstantEstimates {
  double L_f = 0.0;       ///< Lipschitz constant of grad f.
  double L_g = 0.0;       ///< Lipschitz constant of the constraint Jacobian.
  double M_g = 0.0;       ///< Bound on the constraint Jacobian spectral norm.
  double B_g = 0.0;       ///< Bound on ||g(x)|| over the domain.
  double B_u = 0.0;       ///< Bound on ||u_k|| along solver runs.
  double B_lambda = 0.0;  ///< Bound on ||lambda_k|| along solver runs.

  enum class Provenance { UserSupplied, Sampled };
  Provenance provenance = Provenance::UserSupplied;
};

/// Value and gradient of the smooth objective term at a point.
struct ObjectiveEval {
  double value = 0.0;
  Vec gradient;
};

/// Values and Jacobian of the constraint map at a point. The Jacobian is
/// m x n (row j = gradient of constraint j); in nonsmooth mode rows hold the
/// deterministic subgradient selection.
struct ConstraintEval {
  Vec values;
  Mat jacobian;
};

/// A constrained composite problem: min f(x) + r(x) s.t. g(x) <= 0.
///
/// `objective` and `constraints` are first-order oracles for f and g. The
/// `smooth_constraints` flag declares whether g has a Lipschitz Jacobian
/// (required by the augmented solver) or only a bounded subgradient
/// selection (handled by the non-augmented solver).
struct ProblemSpec {
  std::string name;
  Index dimension = 0;
  Index num_constraints = 0;
  std::function<ObjectiveEval(const Vec &)> objective;
  std::function<ConstraintEval(const Vec &)> constraints;
  Regularizer regularizer;
  ConstantEstimates constants;
  bool smooth_constraints = true;
};

/// Evaluate f with contract and finiteness checks.
/// Errors: ContractError on dimension mismatch, OracleError if the oracle
/// returns a non-finite value or gradient (message carries the point).
ObjectiveEval evaluate_objective(const ProblemSpec &p, const Vec &x);

/// Evaluate g with contract and finiteness checks (see evaluate_objective).
ConstraintEval evaluate_constraints(const ProblemSpec &p, const Vec &x);

/// Joint cached evaluation of both oracles at one point.
struct Evaluation {
  double f = 0.0;
  Vec grad_f;
  Vec g;
  Mat jacobian;
};

Evaluation evaluate_point(const ProblemSpec &p, const Vec &x);

/// Estimate smoothness constants by sampling `samples` point pairs uniformly
/// from the regularizer box (seeded, deterministic). Ratio estimates are
/// inflated by a 1.5 safety factor; B_u is set to B_g and B_lambda to the
/// tuning default 2*(1+B_g) since neither is observable from samples alone.
/// Errors: ContractError when the domain is unbounded or samples == 0.
ConstantEstimates estimate_constants(const ProblemSpec &p, std::size_t samples,
                                     std::uint64_t seed);

}  // namespace ppl
