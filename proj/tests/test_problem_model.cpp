// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <cmath>
#include <limits>

#include "ppl/problem.hpp"
#include "ppl/problems.hpp"
#include "rng.hpp"
#include "test_support.hpp"

using namespace ppl;

namespace {

ProblemSpec make_quadratic_toy() {
  ProblemSpec p;
  p.name = "quadratic-toy";
  p.dimension = 2;
  p.num_constraints = 1;
  p.objective = [](const Vec &x) {
    ObjectiveEval eval;
    eval.value = 0.5 * x.squaredNorm();
    eval.gradient = x;
    return eval;
  };
  p.constraints = [](const Vec &) {
    ConstraintEval eval;
    eval.values = -Vec::Ones(1);
    eval.jacobian = Mat::Zero(1, 2);
    return eval;
  };
  p.regularizer = Regularizer::box(Vec::Constant(2, -1.0), Vec::Constant(2, 1.0));
  p.constants.L_f = 1.0;
  p.constants.M_g = 0.0;
  p.constants.B_g = 1.0;
  p.smooth_constraints = true;
  return p;
}

}  // namespace

TEST_CASE("apply_prox: zero regularizer is the identity") {
  Vec y(2);
  y << 3.0, -1.0;
  const Vec out = apply_prox(Regularizer::zero(), y, 0.5);
  CHECK(out(0) == 3.0);
  CHECK(out(1) == -1.0);
}

TEST_CASE("apply_prox: box regularizer clips coordinatewise") {
  Vec y(2);
  y << 3.0, -0.2;
  const Regularizer box =
      Regularizer::box(Vec::Constant(2, -1.0), Vec::Constant(2, 1.0));
  const Vec out = apply_prox(box, y, 0.5);
  CHECK(out(0) == 1.0);
  CHECK(out(1) == -0.2);
}

TEST_CASE("apply_prox: L1 regularizer soft-thresholds") {
  Vec y(2);
  y << 0.3, -2.0;
  const Vec out = apply_prox(Regularizer::l1(1.0), y, 0.5);
  CHECK(out(0) == 0.0);
  CHECK(out(1) == -1.5);
}

TEST_CASE("apply_prox: closed forms hold exactly on 1000 random cases") {
  detail::Rng rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    const Index n = 1 + static_cast<Index>(rng.bounded(6));
    Vec y(n), lo(n), hi(n);
    for (Index i = 0; i < n; ++i) {
      y(i) = rng.uniform(-5.0, 5.0);
      const double a = rng.uniform(-2.0, 2.0);
      const double b = rng.uniform(-2.0, 2.0);
      lo(i) = std::min(a, b);
      hi(i) = std::max(a, b);
    }
    const double step = rng.uniform(0.01, 3.0);
    const double weight = rng.uniform(0.0, 2.0);

    const Vec boxed = apply_prox(Regularizer::box(lo, hi), y, step);
    const Vec soft = apply_prox(Regularizer::l1(weight), y, step);
    const Vec ident = apply_prox(Regularizer::zero(), y, step);
    for (Index i = 0; i < n; ++i) {
      CHECK(boxed(i) == std::min(std::max(y(i), lo(i)), hi(i)));
      const double t = step * weight;
      const double expected =
          y(i) > t ? y(i) - t : (y(i) < -t ? y(i) + t : 0.0);
      CHECK(soft(i) == expected);
      CHECK(ident(i) == y(i));
    }
  }
}

TEST_CASE("apply_prox: firm nonexpansiveness on random pairs") {
  detail::Rng rng(23);
  const Regularizer box =
      Regularizer::box(Vec::Constant(3, -1.0), Vec::Constant(3, 2.0));
  const Regularizer l1 = Regularizer::l1(0.7);
  for (int trial = 0; trial < 200; ++trial) {
    Vec a(3), b(3);
    for (Index i = 0; i < 3; ++i) {
      a(i) = rng.uniform(-4.0, 4.0);
      b(i) = rng.uniform(-4.0, 4.0);
    }
    const double step = rng.uniform(0.05, 2.0);
    const double dist = (a - b).norm();
    CHECK((apply_prox(box, a, step) - apply_prox(box, b, step)).norm() <=
          dist + 1e-14);
    CHECK((apply_prox(l1, a, step) - apply_prox(l1, b, step)).norm() <=
          dist + 1e-14);
  }
}

TEST_CASE("apply_prox: invalid inputs are contract errors") {
  Vec y(2);
  y << 1.0, 2.0;
  CHECK_THROWS_AS(apply_prox(Regularizer::zero(), y, 0.0), ContractError);
  CHECK_THROWS_AS(
      apply_prox(Regularizer::box(Vec::Zero(3), Vec::Ones(3)), y, 0.5),
      ContractError);
  CHECK_THROWS_AS(Regularizer::box(Vec::Ones(2), Vec::Zero(2)), ContractError);
  CHECK_THROWS_AS(Regularizer::l1(-1.0), ContractError);
}

TEST_CASE("evaluate_objective: quadratic and linear closed forms") {
  const ProblemSpec quad = make_quadratic_toy();
  Vec x(2);
  x << 1.0, 2.0;
  // The point sits outside the box domain of the toy, but the oracle itself
  // is defined everywhere; evaluate against a widened copy.
  ProblemSpec wide = quad;
  wide.regularizer = Regularizer::zero();
  const ObjectiveEval eval = evaluate_objective(wide, x);
  CHECK(eval.value == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(eval.gradient(0) == doctest::Approx(1.0));
  CHECK(eval.gradient(1) == doctest::Approx(2.0));

  const ProblemSpec disk = make_disk_problem();
  const ObjectiveEval at0 = evaluate_objective(disk, Vec::Zero(2));
  CHECK(at0.value == 0.0);
  CHECK(at0.gradient(0) == 1.0);
  CHECK(at0.gradient(1) == 1.0);
}

TEST_CASE("evaluate_objective: logistic loss at zero weights is log 2") {
  const Dataset data = make_synthetic_fairness_data(3, 64, 4);
  const ProblemSpec p = make_fairness_logistic(
      data, FairnessConstraint::DemographicParity, FairnessOptions{});
  const ObjectiveEval eval = evaluate_objective(p, Vec::Zero(p.dimension));
  CHECK(eval.value == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("evaluate_objective: contract and oracle failures") {
  const ProblemSpec disk = make_disk_problem();
  CHECK_THROWS_AS(evaluate_objective(disk, Vec::Zero(3)), ContractError);

  ProblemSpec bad = disk;
  bad.objective = [](const Vec &) {
    ObjectiveEval eval;
    eval.value = std::numeric_limits<double>::quiet_NaN();
    eval.gradient = Vec::Zero(2);
    return eval;
  };
  CHECK_THROWS_AS(evaluate_objective(bad, Vec::Zero(2)), OracleError);

  ProblemSpec bad_grad = disk;
  bad_grad.objective = [](const Vec &) {
    ObjectiveEval eval;
    eval.value = 0.0;
    eval.gradient = Vec::Constant(2, std::numeric_limits<double>::infinity());
    return eval;
  };
  CHECK_THROWS_AS(evaluate_objective(bad_grad, Vec::Zero(2)), OracleError);
}

TEST_CASE("evaluate_constraints: disk values and jacobian rows") {
  const ProblemSpec disk = make_disk_problem();
  const ConstraintEval at0 = evaluate_constraints(disk, Vec::Zero(2));
  CHECK(at0.values(0) == -1.0);
  CHECK(at0.jacobian(0, 0) == 0.0);
  CHECK(at0.jacobian(0, 1) == 0.0);

  Vec x(2);
  x << 1.0, 0.0;
  const ConstraintEval at1 = evaluate_constraints(disk, x);
  CHECK(at1.values(0) == 0.0);
  CHECK(at1.jacobian(0, 0) == 2.0);
  CHECK(at1.jacobian(0, 1) == 0.0);

  ProblemSpec bad = disk;
  bad.constraints = [](const Vec &) {
    ConstraintEval eval;
    eval.values = Vec::Constant(1, std::numeric_limits<double>::quiet_NaN());
    eval.jacobian = Mat::Zero(1, 2);
    return eval;
  };
  CHECK_THROWS_AS(evaluate_constraints(bad, Vec::Zero(2)), OracleError);
}

TEST_CASE("evaluate_constraints: DP gap vanishes for mirrored groups") {
  // Both groups see identical feature rows, so the surrogate means agree for
  // every weight vector and the constraint sits at -c.
  Dataset data;
  data.features = Mat(4, 2);
  data.features << 0.4, -1.2, 2.0, 0.3, 0.4, -1.2, 2.0, 0.3;
  data.labels = Vec(4);
  data.labels << 1.0, -1.0, 1.0, -1.0;
  data.masks["group"] = {0, 1};
  data.masks["group_c"] = {2, 3};

  FairnessOptions opts;
  opts.tolerance_c = 0.05;
  const ProblemSpec p =
      make_fairness_logistic(data, FairnessConstraint::DemographicParity, opts);

  detail::Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    Vec w(2);
    w << rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0);
    const ConstraintEval eval = evaluate_constraints(p, w);
    CHECK(eval.values(0) == doctest::Approx(-0.05).epsilon(1e-12));
  }
}

TEST_CASE("evaluate_point matches the two single-oracle calls") {
  const ProblemSpec disk = make_disk_problem();
  Vec x(2);
  x << 0.3, -0.4;
  const Evaluation joint = evaluate_point(disk, x);
  const ObjectiveEval obj = evaluate_objective(disk, x);
  const ConstraintEval con = evaluate_constraints(disk, x);
  CHECK(joint.f == obj.value);
  CHECK((joint.grad_f - obj.gradient).norm() == 0.0);
  CHECK((joint.g - con.values).norm() == 0.0);
  CHECK((joint.jacobian - con.jacobian).norm() == 0.0);
}

TEST_CASE("estimate_constants: disk M_g lands near the analytic supremum") {
  const ProblemSpec disk = make_disk_problem();
  const ConstantEstimates est = estimate_constants(disk, 10000, 11);
  // sup ||grad g|| over the box = ||(4,4)|| ~ 5.657, inflated by <= 1.5.
  CHECK(est.M_g >= 5.6);
  CHECK(est.M_g <= 8.5);
  CHECK(est.provenance == ConstantEstimates::Provenance::Sampled);
}

TEST_CASE("estimate_constants: quadratic L_f near the exact Hessian norm") {
  const ProblemSpec quad = make_quadratic_toy();
  const ConstantEstimates est = estimate_constants(quad, 10000, 13);
  CHECK(est.L_f >= 1.0);
  CHECK(est.L_f <= 1.5);
}

TEST_CASE("estimate_constants: constant objective has zero L_f") {
  ProblemSpec p = make_quadratic_toy();
  p.objective = [](const Vec &) {
    ObjectiveEval eval;
    eval.value = 7.0;
    eval.gradient = Vec::Zero(2);
    return eval;
  };
  const ConstantEstimates est = estimate_constants(p, 2000, 7);
  CHECK(est.L_f == 0.0);
}

TEST_CASE("estimate_constants: unbounded domain or zero samples rejected") {
  ProblemSpec p = make_quadratic_toy();
  p.regularizer = Regularizer::zero();
  CHECK_THROWS_AS(estimate_constants(p, 100, 1), ContractError);
  CHECK_THROWS_AS(estimate_constants(make_quadratic_toy(), 0, 1),
                  ContractError);
}

TEST_CASE("finite differences confirm the toy gradients") {
  const ProblemSpec quad = make_quadratic_toy();
  const ProblemSpec disk = make_disk_problem();
  detail::Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec xq = ppl::test::interior_point(quad, rng);
    const ObjectiveEval eq = evaluate_objective(quad, xq);
    CHECK(ppl::test::gradient_fd_error(
              [&](const Vec &v) { return quad.objective(v).value; },
              eq.gradient, xq) <= 1e-5);

    const Vec xd = ppl::test::interior_point(disk, rng);
    const ObjectiveEval ed = evaluate_objective(disk, xd);
    CHECK(ppl::test::gradient_fd_error(
              [&](const Vec &v) { return disk.objective(v).value; },
              ed.gradient, xd) <= 1e-5);
    const ConstraintEval cd = evaluate_constraints(disk, xd);
    CHECK(ppl::test::gradient_fd_error(
              [&](const Vec &v) { return disk.constraints(v).values(0); },
              cd.jacobian.row(0).transpose(), xd) <= 1e-5);
  }
}
