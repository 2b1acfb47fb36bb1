// SPDX-License-Identifier: MIT
#include "ppl/kkt.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ppl {

namespace {

constexpr double kNuFloor = -1e-10;
constexpr double kRelationTol = 1e-9;

/// Validate nu >= kNuFloor and clamp roundoff negatives to zero.
Vec sanitize_nu(const Vec &nu) {
  Vec out = nu;
  for (Index j = 0; j < out.size(); ++j) {
    if (out(j) < kNuFloor)
      throw ContractError("certificate multiplier has negative coordinate " +
                          std::to_string(j) + " = " + std::to_string(out(j)));
    if (out(j) < 0.0) out(j) = 0.0;
  }
  return out;
}

double merit_core(const ProblemSpec &p, const IterateState &s, double alpha,
                  double beta, bool augmented) {
  if (!p.regularizer.contains(s.x))
    throw ContractError("merit evaluation: point is outside the domain");
  const Evaluation eval = evaluate_point(p, s.x);
  const Vec slack_gap = eval.g + s.u - s.z;
  double value = eval.f + s.lambda.dot(slack_gap) + s.mu.dot(s.z) +
                 0.5 * alpha * s.z.squaredNorm() -
                 0.5 * beta * (s.lambda - s.mu).squaredNorm() +
                 p.regularizer.value(s.x);
  if (augmented) {
    const double rho = alpha / (1.0 + alpha * beta);
    value += 0.5 * rho * (eval.g + s.u).squaredNorm();
  }
  return value;
}

}  // namespace

namespace detail {

KktReport kkt_residuals_cached(const ProblemSpec &p, const Vec &x,
                               const Evaluation &eval_at_x, const Vec &nu,
                               double eta_ref, double dual_gap) {
  if (!(eta_ref > 0.0) || !std::isfinite(eta_ref))
    throw ContractError("kkt_residuals: eta_ref must be finite and > 0");
  if (nu.size() != p.num_constraints)
    throw ContractError("kkt_residuals: nu does not match constraint count");
  const Vec clean_nu = sanitize_nu(nu);

  KktReport report;
  const Vec direction =
      eval_at_x.grad_f + eval_at_x.jacobian.transpose() * clean_nu;
  const Vec moved = apply_prox(p.regularizer, x - eta_ref * direction, eta_ref);
  report.stationarity = (x - moved).norm() / eta_ref;
  report.feasibility = eval_at_x.g.cwiseMax(0.0).norm();
  report.complementarity =
      (clean_nu.array() * eval_at_x.g.array()).abs().sum();
  report.dual_gap = dual_gap;
  return report;
}

}  // namespace detail

KktReport kkt_residuals(const ProblemSpec &p, const Vec &x, const Vec &nu,
                        double eta_ref) {
  const Evaluation eval = evaluate_point(p, x);
  return detail::kkt_residuals_cached(p, x, eval, nu, eta_ref, 0.0);
}

KktReport kkt_residuals(const ProblemSpec &p, const IterateState &s,
                        const Vec &nu, double eta_ref) {
  const Evaluation eval = evaluate_point(p, s.x);
  return detail::kkt_residuals_cached(p, s.x, eval, nu, eta_ref,
                                      (s.lambda - s.mu).norm());
}

Vec build_nu_plada(const Vec &lambda, const Vec &u_prev, const Vec &u_next,
                   double tau) {
  if (!(tau > 0.0)) throw ContractError("build_nu_plada: tau must be > 0");
  if (lambda.size() != u_prev.size() || u_prev.size() != u_next.size())
    throw ContractError("build_nu_plada: dimension mismatch");
  return sanitize_nu(lambda + (u_next - u_prev) / tau);
}

Vec build_nu_ppala(const Vec &lambda_prev, const Vec &lambda_next,
                   const Vec &mu_next, const Vec &u_prev, const Vec &u_next,
                   double tau, double rho) {
  if (!(tau > 0.0) || !(rho > 0.0))
    throw ContractError("build_nu_ppala: tau and rho must be > 0");
  if (lambda_prev.size() != lambda_next.size() ||
      lambda_prev.size() != mu_next.size() ||
      lambda_prev.size() != u_prev.size() || u_prev.size() != u_next.size())
    throw ContractError("build_nu_ppala: dimension mismatch");
  return sanitize_nu(lambda_prev + lambda_next - mu_next +
                     (1.0 / tau - rho) * (u_next - u_prev));
}

double eval_p_lagrangian(const ProblemSpec &p, const IterateState &s,
                         double alpha, double beta) {
  return merit_core(p, s, alpha, beta, /*augmented=*/false);
}

double eval_ppal(const ProblemSpec &p, const IterateState &s, double alpha,
                 double beta) {
  return merit_core(p, s, alpha, beta, /*augmented=*/true);
}

RelationReport check_iterate_relations(const IterateState &prev,
                                       const IterateState &next, double rho,
                                       double gamma_cap, double M_g,
                                       double delta_k, SolverMode mode) {
  if (!(rho > 0.0) || !(delta_k > 0.0))
    throw ContractError("check_iterate_relations: rho and delta_k must be > 0");

  const Vec dual_dir = prev.lambda - prev.mu;
  const double gap_sq = dual_dir.squaredNorm();
  double coeff = delta_k / (gap_sq + 1.0);
  if (gamma_cap > 0.0) coeff = std::min(gamma_cap, coeff);

  RelationReport report;
  report.coeff = coeff;
  report.mu_step_bound = (next.mu - prev.mu).squaredNorm() <=
                         0.25 * delta_k * delta_k + kRelationTol;
  report.coeff_bound = coeff * gap_sq <= delta_k + kRelationTol;
  report.contraction =
      std::abs((next.mu - prev.lambda).norm() -
               (1.0 - coeff) * std::sqrt(gap_sq)) <= kRelationTol;

  const double dx_sq = (next.x - prev.x).squaredNorm();
  const double du_sq = (next.u - prev.u).squaredNorm();
  const double lambda_step = (next.lambda - prev.lambda).squaredNorm();
  const double shared = 3.0 * rho * rho * (M_g * M_g * dx_sq + du_sq);
  const double dual_term = mode == SolverMode::Plada
                               ? 3.0 * coeff * coeff * gap_sq
                               : 0.75 * delta_k * delta_k;
  report.lambda_step_bound = lambda_step <= shared + dual_term + kRelationTol;
  return report;
}

DescentCheck check_descent(double L_prev, double L_next, double dx_norm,
                           double du_norm, const ConstantEstimates &constants,
                           double eta, double tau, double rho, double delta_k,
                           SolverMode mode) {
  if (!(eta > 0.0) || !(tau > 0.0) || !(rho > 0.0) || !(delta_k >= 0.0))
    throw ContractError("check_descent: parameters out of range");

  DescentCheck check;
  if (mode == SolverMode::Plada) {
    check.c1 =
        0.5 * (1.0 / eta - constants.L_f -
               3.0 * rho * constants.M_g * constants.M_g);
    check.c2 = 0.5 * (1.0 / tau - 3.0 * rho);
    check.delta_hat = delta_k * delta_k / (2.0 * rho) + delta_k / rho;
  } else {
    const double L_ell =
        constants.L_f + constants.L_g * constants.B_lambda +
        rho * (constants.L_g * constants.B_u + constants.L_g * constants.B_g +
               constants.M_g * constants.M_g);
    check.c1 = 0.5 * (1.0 / eta - L_ell -
                      3.0 * rho * constants.M_g * constants.M_g);
    check.c2 = 1.0 / tau - 2.0 * rho;
    check.delta_hat = delta_k * delta_k / (4.0 * rho) + delta_k / rho;
  }
  const double bound = -check.c1 * dx_norm * dx_norm -
                       check.c2 * du_norm * du_norm + check.delta_hat + 1e-9;
  const double change = L_next - L_prev;
  check.pass = change <= bound;
  check.slack = bound - change;
  return check;
}

RateSummary rate_summary(const std::vector<TraceRecord> &trace,
                         std::size_t T) {
  RateSummary summary;
  std::size_t begin = 0;
  if (!trace.empty() && trace.front().iter == 0) begin = 1;
  const std::size_t usable = trace.size() - begin;

  if (T == 0) T = usable / 4;
  summary.T = T;
  if (T == 0 || usable < 4 * T) {
    summary.insufficient = true;
    return summary;
  }

  double stat_T = 0.0, feas_T = 0.0, comp_T = 0.0;
  double stat_4T = 0.0, feas_4T = 0.0, comp_4T = 0.0;
  for (std::size_t i = 0; i < 4 * T; ++i) {
    const TraceRecord &row = trace[begin + i];
    const double stat_sq = row.stationarity * row.stationarity;
    const double feas_sq = row.feasibility * row.feasibility;
    stat_4T += stat_sq;
    feas_4T += feas_sq;
    comp_4T += row.complementarity;
    if (i < T) {
      stat_T += stat_sq;
      feas_T += feas_sq;
      comp_T += row.complementarity;
    }
  }
  summary.stationarity_sq_avg_T = stat_T / static_cast<double>(T);
  summary.feasibility_sq_avg_T = feas_T / static_cast<double>(T);
  summary.complementarity_avg_T = comp_T / static_cast<double>(T);
  summary.stationarity_sq_avg_4T = stat_4T / static_cast<double>(4 * T);
  summary.feasibility_sq_avg_4T = feas_4T / static_cast<double>(4 * T);
  summary.complementarity_avg_4T = comp_4T / static_cast<double>(4 * T);

  auto ratio = [](double num, double den, double &out, bool &converged) {
    if (den == 0.0 && num == 0.0) {
      converged = true;
      out = 0.0;
    } else if (den == 0.0) {
      out = std::numeric_limits<double>::infinity();
    } else {
      out = num / den;
    }
  };
  ratio(summary.stationarity_sq_avg_4T, summary.stationarity_sq_avg_T,
        summary.stationarity_ratio, summary.stationarity_converged);
  ratio(summary.feasibility_sq_avg_4T, summary.feasibility_sq_avg_T,
        summary.feasibility_ratio, summary.feasibility_converged);
  ratio(summary.complementarity_avg_4T, summary.complementarity_avg_T,
        summary.complementarity_ratio, summary.complementarity_converged);
  return summary;
}

}  // namespace ppl
