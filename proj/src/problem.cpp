// SPDX-License-Identifier: MIT
#include "ppl/problem.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rng.hpp"

namespace ppl {

namespace {

std::string format_point(const Vec &x) {
  std::ostringstream out;
  out << "[";
  const Index shown = std::min<Index>(x.size(), 8);
  for (Index i = 0; i < shown; ++i) {
    if (i) out << ", ";
    out << x(i);
  }
  if (shown < x.size()) out << ", ...";
  out << "]";
  return out.str();
}

}  // namespace

Regularizer Regularizer::box(Vec lo, Vec hi) {
  if (lo.size() != hi.size())
    throw ContractError("box regularizer: bound sizes differ");
  if ((lo.array() > hi.array()).any())
    throw ContractError("box regularizer: lower bound exceeds upper bound");
  Regularizer r;
  r.kind = Kind::Box;
  r.lower = std::move(lo);
  r.upper = std::move(hi);
  return r;
}

Regularizer Regularizer::l1(double weight) {
  if (!(weight >= 0.0) || !std::isfinite(weight))
    throw ContractError("l1 regularizer: weight must be finite and >= 0");
  Regularizer r;
  r.kind = Kind::L1;
  r.weight = weight;
  return r;
}

double Regularizer::value(const Vec &x) const {
  switch (kind) {
    case Kind::Zero:
      return 0.0;
    case Kind::Box:
      return contains(x) ? 0.0
                         : std::numeric_limits<double>::infinity();
    case Kind::L1:
      return weight * x.lpNorm<1>();
  }
  return 0.0;
}

bool Regularizer::contains(const Vec &x) const {
  if (kind != Kind::Box) return true;
  if (x.size() != lower.size()) return false;
  return (x.array() >= lower.array()).all() &&
         (x.array() <= upper.array()).all();
}

Vec Regularizer::domain_center(Index dim) const {
  if (kind == Kind::Box) {
    if (lower.size() != dim)
      throw ContractError("domain_center: box bounds do not match dimension");
    return 0.5 * (lower + upper);
  }
  return Vec::Zero(dim);
}

Vec apply_prox(const Regularizer &r, const Vec &y, double step) {
  if (!(step > 0.0) || !std::isfinite(step))
    throw ContractError("apply_prox: step must be finite and > 0");
  switch (r.kind) {
    case Regularizer::Kind::Zero:
      return y;
    case Regularizer::Kind::Box:
      if (y.size() != r.lower.size())
        throw ContractError("apply_prox: point does not match box bounds");
      return y.cwiseMax(r.lower).cwiseMin(r.upper);
    case Regularizer::Kind::L1: {
      const double threshold = step * r.weight;
      return y.unaryExpr([threshold](double v) {
        const double shrunk = std::abs(v) - threshold;
        return shrunk > 0.0 ? (v > 0.0 ? shrunk : -shrunk) : 0.0;
      });
    }
  }
  return y;
}

ObjectiveEval evaluate_objective(const ProblemSpec &p, const Vec &x) {
  if (!p.objective) throw ContractError("problem has no objective oracle");
  if (x.size() != p.dimension)
    throw ContractError("evaluate_objective: point has dimension " +
                        std::to_string(x.size()) + ", expected " +
                        std::to_string(p.dimension));
  ObjectiveEval eval = p.objective(x);
  if (eval.gradient.size() != p.dimension)
    throw ContractError("objective oracle returned a gradient of dimension " +
                        std::to_string(eval.gradient.size()));
  if (!std::isfinite(eval.value) || !eval.gradient.allFinite())
    throw OracleError("objective oracle returned non-finite values at x = " +
                      format_point(x));
  return eval;
}

ConstraintEval evaluate_constraints(const ProblemSpec &p, const Vec &x) {
  if (!p.constraints) throw ContractError("problem has no constraint oracle");
  if (x.size() != p.dimension)
    throw ContractError("evaluate_constraints: point has dimension " +
                        std::to_string(x.size()) + ", expected " +
                        std::to_string(p.dimension));
  ConstraintEval eval = p.constraints(x);
  if (eval.values.size() != p.num_constraints ||
      eval.jacobian.rows() != p.num_constraints ||
      eval.jacobian.cols() != p.dimension)
    throw ContractError("constraint oracle returned mismatched shapes");
  if (!eval.values.allFinite() || !eval.jacobian.allFinite())
    throw OracleError("constraint oracle returned non-finite values at x = " +
                      format_point(x));
  return eval;
}

Evaluation evaluate_point(const ProblemSpec &p, const Vec &x) {
  Evaluation eval;
  ObjectiveEval obj = evaluate_objective(p, x);
  ConstraintEval con = evaluate_constraints(p, x);
  eval.f = obj.value;
  eval.grad_f = std::move(obj.gradient);
  eval.g = std::move(con.values);
  eval.jacobian = std::move(con.jacobian);
  return eval;
}

ConstantEstimates estimate_constants(const ProblemSpec &p, std::size_t samples,
                                     std::uint64_t seed) {
  if (samples == 0)
    throw ContractError("estimate_constants: samples must be positive");
  if (!p.regularizer.bounded_domain())
    throw ContractError(
        "estimate_constants: sampling requires a bounded regularizer box; "
        "supply constants explicitly for unbounded domains");
  const Vec &lo = p.regularizer.lower;
  const Vec &hi = p.regularizer.upper;
  if (lo.size() != p.dimension)
    throw ContractError("estimate_constants: box does not match dimension");

  detail::Rng rng(seed);
  auto draw = [&]() {
    Vec x(p.dimension);
    for (Index i = 0; i < p.dimension; ++i) x(i) = rng.uniform(lo(i), hi(i));
    return x;
  };
  auto spectral_norm = [](const Mat &m) {
    if (m.rows() == 1) return m.row(0).norm();
    return m.jacobiSvd().singularValues()(0);
  };

  ConstantEstimates est;
  est.provenance = ConstantEstimates::Provenance::Sampled;
  double max_lf = 0.0, max_lg = 0.0, max_mg = 0.0, max_bg = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const Vec a = draw();
    const Vec b = draw();
    const Evaluation ea = evaluate_point(p, a);
    const Evaluation eb = evaluate_point(p, b);
    max_mg = std::max({max_mg, spectral_norm(ea.jacobian),
                       spectral_norm(eb.jacobian)});
    max_bg = std::max({max_bg, ea.g.norm(), eb.g.norm()});
    const double dist = (a - b).norm();
    if (dist > 1e-12) {
      max_lf = std::max(max_lf, (ea.grad_f - eb.grad_f).norm() / dist);
      if (p.smooth_constraints)
        max_lg = std::max(max_lg, spectral_norm(ea.jacobian - eb.jacobian) / dist);
    }
  }
  const double safety = 1.5;
  est.L_f = safety * max_lf;
  est.L_g = safety * max_lg;
  est.M_g = safety * max_mg;
  est.B_g = safety * max_bg;
  est.B_u = est.B_g;
  // Multiplier magnitudes are a property of solver runs, not of samples;
  // scale the tuning default with the constraint magnitude.
  est.B_lambda = 2.0 * (1.0 + est.B_g);
  return est;
}

}  // namespace ppl
