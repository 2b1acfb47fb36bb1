// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <cmath>
#include <vector>

#include "ppl/kkt.hpp"
#include "ppl/plada.hpp"
#include "ppl/problems.hpp"
#include "test_support.hpp"

using namespace ppl;

namespace {

IterateState zero_state(Index n, Index m) {
  IterateState s;
  s.x = Vec::Zero(n);
  s.u = Vec::Zero(m);
  s.z = Vec::Zero(m);
  s.lambda = Vec::Zero(m);
  s.mu = Vec::Zero(m);
  s.k = 0;
  return s;
}

/// Closed-form solver of the exact x-subproblem on the 1-D line toy:
/// argmin_x { grad_f * x + lambda * x + (x - x_k)^2 / (2 eta) } over [-1, 1].
Vec line_toy_exact_solver(const ProblemSpec &p, const IterateState &s,
                          const Vec &grad_f, double eta) {
  Vec target = s.x - eta * (grad_f + Vec::Constant(1, s.lambda(0)));
  return apply_prox(p.regularizer, target, eta);
}

}  // namespace

TEST_CASE("derive_plada_params: rho formula and step defaults") {
  ProblemSpec toy = ppl::test::make_line_toy();
  toy.constants.L_f = 1.0;  // the trivial-formula example uses L_f = 1
  PladaParams params;
  params.alpha = 10.0;
  params.beta = 0.1;
  const PladaParams derived = derive_plada_params(toy, params);
  CHECK(derived.rho() == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(derived.eta == doctest::Approx(0.9 / 16.0).epsilon(1e-15));
  CHECK(derived.tau == doctest::Approx(0.9 / 15.0).epsilon(1e-15));
}

TEST_CASE("derive_plada_params: parameter range validation") {
  const ProblemSpec toy = ppl::test::make_line_toy();
  PladaParams params;

  params.alpha = 1.0;
  CHECK_THROWS_AS(derive_plada_params(toy, params), ContractError);
  params.alpha = 10.0;

  params.beta = 0.0;
  CHECK_THROWS_AS(derive_plada_params(toy, params), ContractError);
  params.beta = 1.0;
  CHECK_THROWS_AS(derive_plada_params(toy, params), ContractError);
  params.beta = 0.1;

  params.gamma0 = 0.0;
  CHECK_THROWS_AS(derive_plada_params(toy, params), ContractError);
  params.gamma0 = 1.5;
  CHECK_THROWS_AS(derive_plada_params(toy, params), ContractError);
  params.gamma0 = 0.1;

  params.kappa = 0.0;
  CHECK_THROWS_AS(derive_plada_params(toy, params), ContractError);
  params.kappa = 1.2;
  CHECK_THROWS_AS(derive_plada_params(toy, params), ContractError);
  params.kappa = 1.0;

  params.eta = -0.1;
  CHECK_THROWS_AS(derive_plada_params(toy, params), ContractError);
  params.eta = 0.0;

  params.lambda_cap = -1.0;
  CHECK_THROWS_AS(derive_plada_params(toy, params), ContractError);
  params.lambda_cap = 0.0;

  params.x_update = PladaParams::XUpdate::ExactSubproblem;
  CHECK_THROWS_AS(derive_plada_params(toy, params), ContractError);
}

TEST_CASE("derive_plada_params: out-of-bound step overrides are kept") {
  const ProblemSpec toy = ppl::test::make_line_toy();
  PladaParams params;
  params.eta = 10.0;  // far beyond 1/(3 rho M_g^2)
  params.tau = 10.0;  // far beyond 1/(3 rho)
  const PladaParams derived = derive_plada_params(toy, params);
  CHECK(derived.eta == 10.0);
  CHECK(derived.tau == 10.0);
}

TEST_CASE("delta_schedule_plada: kappa/(k+1)") {
  PladaParams params;
  params.kappa = 1.0;
  CHECK(delta_schedule_plada(params, 0) == 1.0);
  CHECK(delta_schedule_plada(params, 9) == doctest::Approx(0.1));
  params.kappa = 0.5;
  CHECK(delta_schedule_plada(params, 4) == doctest::Approx(0.1));
}

TEST_CASE("plada_step: hand-simulated step on the 1-D line toy") {
  const ProblemSpec toy = ppl::test::make_line_toy();
  PladaParams params;
  params.alpha = 10.0;
  params.beta = 0.1;  // rho = 5
  params.eta = 0.1;
  params.tau = 0.1;
  params.gamma0 = 0.1;
  params.kappa = 1.0;  // delta_0 = 1

  const IterateState next = plada_step(toy, zero_state(1, 1), params);
  CHECK(next.x(0) == doctest::Approx(-0.1).epsilon(1e-15));
  CHECK(next.u(0) == 0.0);
  CHECK(next.mu(0) == 0.0);
  CHECK(next.lambda(0) == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(next.z(0) == doctest::Approx(-0.05).epsilon(1e-14));
  CHECK(next.k == 1);
}

TEST_CASE("plada_step: KKT fixed point is reproduced to 1e-10") {
  const ProblemSpec disk = make_disk_problem();
  const double r = 1.0 / std::sqrt(2.0);
  IterateState s = zero_state(2, 1);
  s.x = Vec::Constant(2, -r);
  s.u = Vec::Zero(1);
  s.lambda = Vec::Constant(1, r);
  s.mu = Vec::Constant(1, r);
  s.z = Vec::Zero(1);

  PladaParams params;
  params.eta = 0.01;
  params.tau = 0.01;
  const IterateState next = plada_step(disk, s, params);
  CHECK((next.x - s.x).norm() <= 1e-10);
  CHECK((next.u - s.u).norm() <= 1e-10);
  CHECK((next.lambda - s.lambda).norm() <= 1e-10);
  CHECK((next.mu - s.mu).norm() <= 1e-10);
  CHECK((next.z - s.z).norm() <= 1e-10);
}

TEST_CASE("plada_step: slack projection clips the negative step") {
  const ProblemSpec toy = ppl::test::make_line_toy();
  IterateState s = zero_state(1, 1);
  s.u = Vec::Constant(1, 0.3);
  s.lambda = Vec::Constant(1, 5.0);
  PladaParams params;
  params.tau = 0.1;
  params.eta = 0.01;
  const IterateState next = plada_step(toy, s, params);
  CHECK(next.u(0) == 0.0);  // max(0, 0.3 - 0.5)
}

TEST_CASE("plada_step: post-step closure identities hold") {
  const ProblemSpec disk = make_disk_problem();
  PladaParams params;
  params.alpha = 10.0;
  params.beta = 0.1;
  const PladaParams derived = derive_plada_params(disk, params);
  const double rho = derived.rho();

  Evaluation eval = evaluate_point(disk, Vec::Zero(2));
  IterateState s = make_initial_state(Vec::Zero(2), eval.g);
  for (int k = 0; k < 25; ++k) {
    s = plada_step(disk, s, derived);
    const ConstraintEval g = evaluate_constraints(disk, s.x);
    CHECK((s.lambda - s.mu - rho * (g.values + s.u)).lpNorm<Eigen::Infinity>() <=
          1e-10);
    CHECK((s.z - (s.lambda - s.mu) / derived.alpha).lpNorm<Eigen::Infinity>() <=
          1e-10);
    CHECK(s.u.minCoeff() >= 0.0);
  }
}

TEST_CASE("plada exact-subproblem mode satisfies the descent inequality") {
  const ProblemSpec toy = ppl::test::make_line_toy();
  PladaParams params;
  params.alpha = 10.0;
  params.beta = 0.1;
  params.x_update = PladaParams::XUpdate::ExactSubproblem;
  params.exact_x_solver = line_toy_exact_solver;
  params.max_iters = 300;
  params.early_stop = false;
  const PladaParams derived = derive_plada_params(toy, params);
  const double rho = derived.rho();

  double L_prev = 0.0;
  bool have_prev = false;
  std::uint64_t checked = 0;
  RunHooks hooks;
  hooks.on_step = [&](const StepEvent &event) {
    const double L_next =
        eval_p_lagrangian(toy, event.next, derived.alpha, derived.beta);
    if (have_prev) {
      const DescentCheck check = check_descent(
          L_prev, L_next, (event.next.x - event.prev.x).norm(),
          (event.next.u - event.prev.u).norm(), toy.constants, derived.eta,
          derived.tau, rho, event.delta_k, SolverMode::Plada);
      CHECK(check.pass);
      ++checked;
    }
    L_prev = L_next;
    have_prev = true;
  };
  run_plada(toy, derived, Vec::Zero(1), hooks);
  CHECK(checked >= 298);
}

TEST_CASE("run_plada: disk problem converges with a widened primal step") {
  const ProblemSpec disk = make_disk_problem();
  PladaParams params;
  params.alpha = 10.0;
  params.beta = 0.1;
  params.gamma0 = 0.1;
  params.kappa = 1.0;
  params.eta = 0.01;  // accepted override; default is too small to converge
  params.max_iters = 50000;

  const SolveResult result = run_plada(disk, params, Vec::Zero(2));
  CHECK(result.converged);
  CHECK(result.stop_reason == StopReason::Converged);
  CHECK(result.iterations <= 50000);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK((result.state.x - Vec::Constant(2, -r)).norm() <= 1e-3);
  CHECK(std::abs(result.nu(0) - r) <= 1e-2);
  CHECK(result.final_report.stationarity <= 1e-3);
  CHECK(result.final_report.feasibility <= 1e-3);
  CHECK(result.final_report.complementarity <= 1e-3);
}

TEST_CASE("run_plada: inactive constraint recovers the unconstrained optimum") {
  Vec center(2);
  center << 0.4, -0.3;
  const ProblemSpec toy = ppl::test::make_inactive_toy(center, 2.0);
  PladaParams params;
  params.max_iters = 20000;
  const SolveResult result = run_plada(toy, params, Vec::Zero(2));
  CHECK(result.converged);
  CHECK((result.state.x - center).norm() <= 1e-3);
  CHECK(result.state.lambda.norm() <= 1e-6);
}

TEST_CASE("run_plada: zero budget returns the initial state") {
  const ProblemSpec disk = make_disk_problem();
  PladaParams params;
  params.max_iters = 0;
  std::vector<TraceRecord> rows;
  RunHooks hooks;
  hooks.trace = [&rows](const TraceRecord &row) { rows.push_back(row); };
  const SolveResult result = run_plada(disk, params, Vec::Zero(2), hooks);
  CHECK(result.iterations == 0);
  CHECK(result.stop_reason == StopReason::Budget);
  CHECK_FALSE(result.converged);
  CHECK((result.state.x - Vec::Zero(2)).norm() == 0.0);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].iter == 0);
}

TEST_CASE("run_plada: initialization follows the documented convention") {
  const ProblemSpec disk = make_disk_problem();
  PladaParams params;
  params.max_iters = 0;
  Vec x0(2);
  x0 << 0.5, 0.5;  // g = -0.5 -> u0 = 0.5
  const SolveResult result = run_plada(disk, params, x0);
  CHECK(result.state.u(0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(result.state.lambda.norm() == 0.0);
  CHECK(result.state.mu.norm() == 0.0);
  CHECK(result.state.z.norm() == 0.0);

  Vec outside(2);
  outside << 3.0, 0.0;
  CHECK_THROWS_AS(run_plada(disk, params, outside), ContractError);
}

TEST_CASE("run_plada: non-finite iterates raise a divergence error") {
  const ProblemSpec disk = make_disk_problem();
  PladaParams params;
  params.tau = 1e308;  // one slack step overflows once lambda goes negative
  params.max_iters = 100;
  params.early_stop = false;
  try {
    run_plada(disk, params, Vec::Zero(2));
    FAIL("expected DivergenceError");
  } catch (const DivergenceError &e) {
    CHECK(e.iteration() >= 1);
    CHECK(e.iteration() <= 100);
  }
}
