// SPDX-License-Identifier: MIT
#include "ppl/problems.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <memory>
#include <utility>

#include "rng.hpp"

namespace ppl {

namespace {

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

/// log(1 + exp(t)), overflow-safe.
double log1pexp(double t) {
  if (t > 0.0) return t + std::log1p(std::exp(-t));
  return std::log1p(std::exp(t));
}

Vec dataset_matvec(const Dataset &d, const Vec &w) {
  if (d.sparse) return d.sparse_features * w;
  return d.features * w;
}

Vec dataset_tvec(const Dataset &d, const Vec &coef) {
  if (d.sparse) return d.sparse_features.transpose() * coef;
  return d.features.transpose() * coef;
}

double dataset_row_norm(const Dataset &d, Index i) {
  return std::sqrt(d.row_squared_norm(i));
}

double dataset_row_l1(const Dataset &d, Index i) {
  if (!d.sparse) return d.features.row(i).lpNorm<1>();
  double sum = 0.0;
  for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(
           d.sparse_features, i);
       it; ++it)
    sum += std::abs(it.value());
  return sum;
}

double mean_row_norm(const Dataset &d, const std::vector<Index> &mask) {
  double sum = 0.0;
  for (Index i : mask) sum += dataset_row_norm(d, i);
  return sum / static_cast<double>(mask.size());
}

/// Largest eigenvalue bound of the logistic Hessian: lambda_max(X^T X)/(4N),
/// exact for moderate dimensions, trace bound otherwise.
double logistic_curvature(const Dataset &d) {
  const auto n = static_cast<double>(d.rows());
  if (!d.sparse && d.dim() <= 256) {
    const Mat gram = d.features.transpose() * d.features;
    Eigen::SelfAdjointEigenSolver<Mat> eig(gram);
    return eig.eigenvalues().maxCoeff() / (4.0 * n);
  }
  double trace = 0.0;
  for (Index i = 0; i < d.rows(); ++i) trace += d.row_squared_norm(i);
  return trace / (4.0 * n);
}

const std::vector<Index> &require_mask(const Dataset &d,
                                       const std::string &name) {
  const auto it = d.masks.find(name);
  if (it == d.masks.end())
    throw ContractError("fairness problem: dataset lacks mask '" + name + "'");
  if (it->second.empty())
    throw ContractError("fairness problem: mask '" + name + "' is empty");
  return it->second;
}

struct FairnessData {
  Dataset data;
  FairnessConstraint constraint;
  double c = 0.05;
  bool eo_two = false;  ///< EO as two constraints instead of their max.
  std::vector<Index> group, group_c;
  std::vector<Index> group_pos, group_neg, group_c_pos, group_c_neg;
  std::vector<std::vector<Index>> parts;  ///< Intersectional masks.
};

/// Mean sigmoid-score gap between two row sets, with the gradient
/// coefficient layout (sign applied by the caller).
double score_gap(const Vec &sig, const std::vector<Index> &a,
                 const std::vector<Index> &b) {
  double mean_a = 0.0, mean_b = 0.0;
  for (Index i : a) mean_a += sig(i);
  for (Index i : b) mean_b += sig(i);
  return mean_a / static_cast<double>(a.size()) -
         mean_b / static_cast<double>(b.size());
}

void add_gap_coefficients(const Vec &sig, const std::vector<Index> &a,
                          const std::vector<Index> &b, double sign, Vec &coef) {
  for (Index i : a)
    coef(i) += sign * sig(i) * (1.0 - sig(i)) / static_cast<double>(a.size());
  for (Index i : b)
    coef(i) -= sign * sig(i) * (1.0 - sig(i)) / static_cast<double>(b.size());
}

struct QpData {
  Mat Q;
  Vec c;
  std::vector<Mat> A;
  std::vector<Vec> b;
};

Mat seeded_orthogonal(detail::Rng &rng, Index n) {
  Mat gaussian(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) gaussian(i, j) = rng.normal();
  Eigen::HouseholderQR<Mat> qr(gaussian);
  return qr.householderQ();
}

Mat seeded_indefinite(detail::Rng &rng, Index n, double &norm_out) {
  Vec eigs(n);
  for (Index i = 0; i < n; ++i) {
    if (i == 0)
      eigs(i) = 0.5 + 0.5 * rng.uniform01();
    else if (i == n - 1)
      eigs(i) = -(0.5 + 0.5 * rng.uniform01());
    else
      eigs(i) = rng.uniform(-1.0, 1.0);
  }
  const Mat basis = seeded_orthogonal(rng, n);
  Mat m = basis * eigs.asDiagonal() * basis.transpose();
  m = 0.5 * (m + m.transpose());
  norm_out = eigs.cwiseAbs().maxCoeff();
  return m;
}

struct MnpcData {
  std::vector<Mat> class_features;  ///< One P x d block per class.
  Vec kappa;                        ///< classes - 1 budget levels.
  Index classes = 0, per_class = 0, dim = 0;
};

double phi(double t) { return sigmoid(-t); }
double phi_prime(double t) {
  const double v = phi(t);
  return -v * (1.0 - v);
}

/// Mean pairwise surrogate risk of class `own` and its gradient blocks.
double mnpc_risk(const MnpcData &m, const Vec &xi, Index own, Vec *grad) {
  const Index d = m.dim, C = m.classes;
  const Eigen::Map<const Mat> weights(xi.data(), d, C);
  const Mat scores = m.class_features[own] * weights;  // P x C
  const double inv_p = 1.0 / static_cast<double>(m.per_class);
  double risk = 0.0;
  for (Index j = 0; j < C; ++j) {
    if (j == own) continue;
    Vec coef(m.per_class);
    for (Index s = 0; s < m.per_class; ++s) {
      const double margin = scores(s, own) - scores(s, j);
      risk += inv_p * phi(margin);
      coef(s) = inv_p * phi_prime(margin);
    }
    if (grad) {
      const Vec pulled = m.class_features[own].transpose() * coef;
      grad->segment(own * d, d) += pulled;
      grad->segment(j * d, d) -= pulled;
    }
  }
  return risk;
}

}  // namespace

ProblemSpec make_disk_problem() {
  ProblemSpec p;
  p.name = "disk";
  p.dimension = 2;
  p.num_constraints = 1;
  p.objective = [](const Vec &x) {
    ObjectiveEval eval;
    eval.value = x(0) + x(1);
    eval.gradient = Vec::Ones(2);
    return eval;
  };
  p.constraints = [](const Vec &x) {
    ConstraintEval eval;
    eval.values = Vec::Constant(1, x.squaredNorm() - 1.0);
    eval.jacobian = 2.0 * x.transpose();
    return eval;
  };
  p.regularizer = Regularizer::box(Vec::Constant(2, -2.0), Vec::Constant(2, 2.0));
  p.constants.L_f = 0.0;
  p.constants.L_g = 2.0;
  p.constants.M_g = 4.0 * std::sqrt(2.0);  // sup 2||x|| over the box
  p.constants.B_g = 7.0;                   // sup | ||x||^2 - 1 | over the box
  p.constants.B_u = 7.0;
  p.constants.B_lambda = 10.0;
  p.smooth_constraints = true;
  return p;
}

ProblemSpec make_nonconvex_qp(std::uint64_t seed, Index n, Index m) {
  if (n < 2 || n > 50) throw ContractError("qp: n must lie in [2, 50]");
  if (m < 1 || m > 10) throw ContractError("qp: m must lie in [1, 10]");

  detail::Rng rng(seed);
  auto data = std::make_shared<QpData>();
  double q_norm = 0.0;
  data->Q = seeded_indefinite(rng, n, q_norm);
  data->c = Vec(n);
  for (Index i = 0; i < n; ++i) data->c(i) = rng.uniform(-0.5, 0.5);

  std::vector<double> a_norms(m);
  data->A.reserve(m);
  data->b.reserve(m);
  for (Index j = 0; j < m; ++j) {
    data->A.push_back(seeded_indefinite(rng, n, a_norms[j]));
    Vec bj(n);
    for (Index i = 0; i < n; ++i) bj(i) = rng.uniform(-0.5, 0.5);
    data->b.push_back(std::move(bj));
  }

  ProblemSpec p;
  p.name = "qp";
  p.dimension = n;
  p.num_constraints = m;
  p.objective = [data](const Vec &x) {
    ObjectiveEval eval;
    const Vec qx = data->Q * x;
    eval.value = 0.5 * x.dot(qx) + data->c.dot(x);
    eval.gradient = qx + data->c;
    return eval;
  };
  p.constraints = [data, m, n](const Vec &x) {
    ConstraintEval eval;
    eval.values.resize(m);
    eval.jacobian.resize(m, n);
    for (Index j = 0; j < m; ++j) {
      const Vec ax = data->A[static_cast<std::size_t>(j)] * x;
      eval.values(j) =
          0.5 * x.dot(ax) + data->b[static_cast<std::size_t>(j)].dot(x) - 0.5;
      eval.jacobian.row(j) =
          (ax + data->b[static_cast<std::size_t>(j)]).transpose();
    }
    return eval;
  };
  p.regularizer =
      Regularizer::box(Vec::Constant(n, -1.0), Vec::Constant(n, 1.0));

  const double sqrt_n = std::sqrt(static_cast<double>(n));
  double mg_sq = 0.0, bg_sq = 0.0, lg_sq = 0.0;
  for (Index j = 0; j < m; ++j) {
    const double b_norm = data->b[static_cast<std::size_t>(j)].norm();
    const double grad_bound = a_norms[static_cast<std::size_t>(j)] * sqrt_n + b_norm;
    const double value_bound =
        0.5 * a_norms[static_cast<std::size_t>(j)] * static_cast<double>(n) +
        b_norm * sqrt_n + 0.5;
    mg_sq += grad_bound * grad_bound;
    bg_sq += value_bound * value_bound;
    lg_sq += a_norms[static_cast<std::size_t>(j)] *
             a_norms[static_cast<std::size_t>(j)];
  }
  p.constants.L_f = q_norm;
  p.constants.L_g = std::sqrt(lg_sq);
  p.constants.M_g = std::sqrt(mg_sq);
  p.constants.B_g = std::sqrt(bg_sq);
  p.constants.B_u = p.constants.B_g;
  p.constants.B_lambda = 10.0;
  p.smooth_constraints = true;
  return p;
}

ProblemSpec make_fairness_logistic(const Dataset &data,
                                   FairnessConstraint constraint,
                                   const FairnessOptions &opts) {
  if (data.rows() < 2)
    throw ContractError("fairness problem: dataset needs at least 2 rows");
  if (!(opts.tolerance_c > 0.0))
    throw ContractError("fairness problem: tolerance c must be > 0");
  if (!(opts.box_halfwidth > 0.0))
    throw ContractError("fairness problem: box halfwidth must be > 0");

  auto fd = std::make_shared<FairnessData>();
  fd->data = data;
  fd->constraint = constraint;
  fd->c = opts.tolerance_c;

  Index m = 1;
  if (constraint == FairnessConstraint::DemographicParity) {
    fd->group = require_mask(data, opts.group);
    fd->group_c = require_mask(data, opts.group + "_c");
  } else if (constraint == FairnessConstraint::EqualOpportunity) {
    fd->group_pos = require_mask(data, opts.group + "_pos");
    fd->group_c_pos = require_mask(data, opts.group + "_c_pos");
    fd->group_neg = require_mask(data, opts.group + "_neg");
    fd->group_c_neg = require_mask(data, opts.group + "_c_neg");
    fd->eo_two = opts.eo_two_constraints;
    if (fd->eo_two) m = 2;
  } else {
    if (opts.intersectional_masks.size() < 2)
      throw ContractError(
          "fairness problem: intersectional mode needs at least 2 masks");
    for (const std::string &name : opts.intersectional_masks)
      fd->parts.push_back(require_mask(data, name));
    m = static_cast<Index>(fd->parts.size());
  }

  const Index dim = data.dim();
  const Index rows = data.rows();

  ProblemSpec p;
  p.name = constraint == FairnessConstraint::DemographicParity
               ? "fairness-dp"
               : (constraint == FairnessConstraint::EqualOpportunity
                      ? "fairness-eo"
                      : "intersectional");
  p.dimension = dim;
  p.num_constraints = m;
  p.objective = [fd, rows](const Vec &w) {
    const Vec scores = dataset_matvec(fd->data, w);
    const double inv_n = 1.0 / static_cast<double>(rows);
    double loss = 0.0;
    Vec coef(rows);
    for (Index i = 0; i < rows; ++i) {
      const double y = fd->data.labels(i);
      loss += inv_n * log1pexp(-y * scores(i));
      coef(i) = -inv_n * y * sigmoid(-y * scores(i));
    }
    ObjectiveEval eval;
    eval.value = loss;
    eval.gradient = dataset_tvec(fd->data, coef);
    return eval;
  };
  p.constraints = [fd, rows, dim, m](const Vec &w) {
    const Vec scores = dataset_matvec(fd->data, w);
    ConstraintEval eval;
    eval.values.resize(m);
    eval.jacobian.resize(m, dim);
    if (fd->constraint == FairnessConstraint::Intersectional) {
      const double inv_n = 1.0 / static_cast<double>(rows);
      Vec hinge(rows), slope(rows);
      double mean_all = 0.0;
      for (Index i = 0; i < rows; ++i) {
        const double margin = 1.0 - fd->data.labels(i) * scores(i);
        // Kink selection: [t]+ = max(t, 0), ties take the first branch.
        hinge(i) = margin > 0.0 ? margin : 0.0;
        slope(i) = margin >= 0.0 ? -fd->data.labels(i) : 0.0;
        mean_all += inv_n * hinge(i);
      }
      for (Index gi = 0; gi < m; ++gi) {
        const auto &part = fd->parts[static_cast<std::size_t>(gi)];
        const double inv_g = 1.0 / static_cast<double>(part.size());
        double mean_g = 0.0;
        Vec coef(rows);
        for (Index i : part) mean_g += inv_g * hinge(i);
        for (Index i = 0; i < rows; ++i) coef(i) = -inv_n * slope(i);
        for (Index i : part) coef(i) += inv_g * slope(i);
        eval.values(gi) = mean_g - mean_all - fd->c;
        eval.jacobian.row(gi) = dataset_tvec(fd->data, coef).transpose();
      }
      return eval;
    }

    Vec sig(rows);
    for (Index i = 0; i < rows; ++i) sig(i) = sigmoid(scores(i));
    Vec coef = Vec::Zero(rows);
    if (fd->constraint == FairnessConstraint::DemographicParity) {
      const double gap = score_gap(sig, fd->group, fd->group_c);
      // |t| = max(t, -t): ties take the first branch (+1).
      const double sign = gap >= 0.0 ? 1.0 : -1.0;
      eval.values(0) = std::abs(gap) - fd->c;
      add_gap_coefficients(sig, fd->group, fd->group_c, sign, coef);
    } else if (fd->eo_two) {
      const double gap_pos = score_gap(sig, fd->group_pos, fd->group_c_pos);
      const double gap_neg = score_gap(sig, fd->group_neg, fd->group_c_neg);
      eval.values(0) = std::abs(gap_pos) - fd->c;
      eval.values(1) = std::abs(gap_neg) - fd->c;
      add_gap_coefficients(sig, fd->group_pos, fd->group_c_pos,
                           gap_pos >= 0.0 ? 1.0 : -1.0, coef);
      eval.jacobian.row(0) = dataset_tvec(fd->data, coef).transpose();
      coef.setZero();
      add_gap_coefficients(sig, fd->group_neg, fd->group_c_neg,
                           gap_neg >= 0.0 ? 1.0 : -1.0, coef);
      eval.jacobian.row(1) = dataset_tvec(fd->data, coef).transpose();
      return eval;
    } else {
      const double gap_pos = score_gap(sig, fd->group_pos, fd->group_c_pos);
      const double gap_neg = score_gap(sig, fd->group_neg, fd->group_c_neg);
      eval.values(0) = std::max(std::abs(gap_pos), std::abs(gap_neg)) - fd->c;
      if (std::abs(gap_pos) >= std::abs(gap_neg)) {
        add_gap_coefficients(sig, fd->group_pos, fd->group_c_pos,
                             gap_pos >= 0.0 ? 1.0 : -1.0, coef);
      } else {
        add_gap_coefficients(sig, fd->group_neg, fd->group_c_neg,
                             gap_neg >= 0.0 ? 1.0 : -1.0, coef);
      }
    }
    eval.jacobian.row(0) = dataset_tvec(fd->data, coef).transpose();
    return eval;
  };
  p.regularizer = Regularizer::box(Vec::Constant(dim, -opts.box_halfwidth),
                                   Vec::Constant(dim, opts.box_halfwidth));

  p.constants.L_f = logistic_curvature(data);
  p.constants.L_g = 0.0;  // nonsmooth constraints
  if (constraint == FairnessConstraint::DemographicParity) {
    p.constants.M_g =
        0.25 * (mean_row_norm(data, fd->group) + mean_row_norm(data, fd->group_c));
    p.constants.B_g = std::max(1.0 - fd->c, fd->c);
  } else if (constraint == FairnessConstraint::EqualOpportunity) {
    const double pos = 0.25 * (mean_row_norm(data, fd->group_pos) +
                               mean_row_norm(data, fd->group_c_pos));
    const double neg = 0.25 * (mean_row_norm(data, fd->group_neg) +
                               mean_row_norm(data, fd->group_c_neg));
    const double value_bound = std::max(1.0 - fd->c, fd->c);
    if (fd->eo_two) {
      p.constants.M_g = std::sqrt(pos * pos + neg * neg);
      p.constants.B_g = std::sqrt(2.0) * value_bound;
    } else {
      p.constants.M_g = std::max(pos, neg);
      p.constants.B_g = value_bound;
    }
  } else {
    double mg_sq = 0.0;
    double mean_all = 0.0;
    for (Index i = 0; i < rows; ++i)
      mean_all += dataset_row_norm(data, i) / static_cast<double>(rows);
    double max_l1 = 0.0;
    for (Index i = 0; i < rows; ++i)
      max_l1 = std::max(max_l1, dataset_row_l1(data, i));
    for (const auto &part : fd->parts) {
      const double bound = mean_row_norm(data, part) + mean_all;
      mg_sq += bound * bound;
    }
    p.constants.M_g = std::sqrt(mg_sq);
    const double hinge_max = 1.0 + opts.box_halfwidth * max_l1;
    p.constants.B_g =
        std::sqrt(static_cast<double>(m)) * (hinge_max + fd->c);
  }
  p.constants.B_u = p.constants.B_g;
  p.constants.B_lambda = 10.0;
  p.smooth_constraints = false;
  return p;
}

ProblemSpec make_intersectional(const Dataset &data,
                                const std::vector<std::string> &groups,
                                const FairnessOptions &opts) {
  FairnessOptions local = opts;
  local.intersectional_masks = groups;
  return make_fairness_logistic(data, FairnessConstraint::Intersectional,
                                local);
}

ProblemSpec make_mnpc_linear(std::uint64_t seed, Index classes,
                             Index per_class, const Vec &kappa, double theta,
                             Index dim) {
  if (classes < 2) throw ContractError("mnpc: classes must be >= 2");
  if (per_class < 2) throw ContractError("mnpc: per_class must be >= 2");
  if (dim < 2) throw ContractError("mnpc: dim must be >= 2");
  if (!(theta > 0.0)) throw ContractError("mnpc: theta must be > 0");

  auto md = std::make_shared<MnpcData>();
  md->classes = classes;
  md->per_class = per_class;
  md->dim = dim;
  if (kappa.size() == 1)
    md->kappa = Vec::Constant(classes - 1, kappa(0));
  else if (kappa.size() == classes - 1)
    md->kappa = kappa;
  else
    throw ContractError("mnpc: kappa must have 1 or classes-1 entries");
  if ((md->kappa.array() <= 0.0).any())
    throw ContractError("mnpc: kappa entries must be > 0");

  detail::Rng rng(seed);
  md->class_features.reserve(classes);
  for (Index c = 0; c < classes; ++c) {
    const double angle =
        2.0 * 3.14159265358979323846 * static_cast<double>(c) /
        static_cast<double>(classes);
    Vec mean = Vec::Zero(dim);
    mean(0) = 2.0 * std::cos(angle);
    mean(1) = 2.0 * std::sin(angle);
    Mat block(per_class, dim);
    for (Index s = 0; s < per_class; ++s)
      for (Index f = 0; f < dim; ++f) block(s, f) = mean(f) + rng.normal();
    md->class_features.push_back(std::move(block));
  }

  const Index total_dim = classes * dim;
  const Index m = classes - 1;

  ProblemSpec p;
  p.name = "mnpc";
  p.dimension = total_dim;
  p.num_constraints = m;
  p.objective = [md, total_dim](const Vec &xi) {
    ObjectiveEval eval;
    eval.gradient = Vec::Zero(total_dim);
    eval.value = mnpc_risk(*md, xi, 0, &eval.gradient);
    return eval;
  };
  p.constraints = [md, total_dim, m](const Vec &xi) {
    ConstraintEval eval;
    eval.values.resize(m);
    eval.jacobian.resize(m, total_dim);
    for (Index i = 1; i < md->classes; ++i) {
      Vec grad = Vec::Zero(total_dim);
      eval.values(i - 1) = mnpc_risk(*md, xi, i, &grad) - md->kappa(i - 1);
      eval.jacobian.row(i - 1) = grad.transpose();
    }
    return eval;
  };
  p.regularizer = Regularizer::box(Vec::Constant(total_dim, -theta),
                                   Vec::Constant(total_dim, theta));

  const double curvature_coeff = 1.0 / (6.0 * std::sqrt(3.0));
  std::vector<double> max_sq(classes, 0.0);
  for (Index c = 0; c < classes; ++c)
    max_sq[static_cast<std::size_t>(c)] =
        md->class_features[static_cast<std::size_t>(c)]
            .rowwise()
            .squaredNorm()
            .maxCoeff();
  const double pairs = static_cast<double>(classes - 1);
  p.constants.L_f = 2.0 * pairs * curvature_coeff * max_sq[0];
  double lg_sq = 0.0, mg_sq = 0.0, bg_sq = 0.0;
  for (Index i = 1; i < classes; ++i) {
    const double li =
        2.0 * pairs * curvature_coeff * max_sq[static_cast<std::size_t>(i)];
    const double mi = pairs * 0.25 * std::sqrt(2.0) *
                      std::sqrt(max_sq[static_cast<std::size_t>(i)]);
    const double bi = std::max(md->kappa(i - 1), pairs - md->kappa(i - 1));
    lg_sq += li * li;
    mg_sq += mi * mi;
    bg_sq += bi * bi;
  }
  p.constants.L_g = std::sqrt(lg_sq);
  p.constants.M_g = std::sqrt(mg_sq);
  p.constants.B_g = std::sqrt(bg_sq);
  p.constants.B_u = p.constants.B_g;
  p.constants.B_lambda = 10.0;
  p.smooth_constraints = true;
  return p;
}

Dataset make_synthetic_fairness_data(std::uint64_t seed, Index rows, Index dim,
                                     Index clusters) {
  if (rows < 8) throw ContractError("synthetic data: rows must be >= 8");
  if (dim < 2) throw ContractError("synthetic data: dim must be >= 2");
  if (clusters < 2 || clusters > rows / 2)
    throw ContractError("synthetic data: clusters must lie in [2, rows/2]");

  detail::Rng rng(seed);
  const Vec shift = Vec::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
  const Vec w_true = 2.0 * shift;

  Dataset d;
  d.features.resize(rows, dim);
  d.labels.resize(rows);
  std::vector<bool> in_group(rows);
  std::vector<Index> cluster_of(rows);
  for (Index i = 0; i < rows; ++i) {
    in_group[static_cast<std::size_t>(i)] = rng.uniform01() < 0.5;
    Vec x(dim);
    for (Index f = 0; f < dim; ++f) x(f) = rng.normal();
    x += (in_group[static_cast<std::size_t>(i)] ? 0.8 : -0.8) * shift;
    const double margin = x.dot(w_true) + 0.8 * rng.normal();
    d.features.row(i) = x.transpose();
    d.labels(i) = margin >= 0.0 ? 1.0 : -1.0;
    cluster_of[static_cast<std::size_t>(i)] =
        static_cast<Index>(rng.bounded(static_cast<std::uint64_t>(clusters)));
  }
  // Pin the first rows so every derived mask is provably non-empty.
  for (Index i = 0; i < 4; ++i) {
    in_group[static_cast<std::size_t>(i)] = i < 2;
    d.labels(i) = (i % 2 == 0) ? 1.0 : -1.0;
  }
  for (Index i = 0; i < clusters; ++i)
    cluster_of[static_cast<std::size_t>(i)] = i;

  auto &masks = d.masks;
  for (Index i = 0; i < rows; ++i) {
    const bool g = in_group[static_cast<std::size_t>(i)];
    const bool pos = d.labels(i) > 0.0;
    masks[g ? "group" : "group_c"].push_back(i);
    masks[g ? (pos ? "group_pos" : "group_neg")
            : (pos ? "group_c_pos" : "group_c_neg")]
        .push_back(i);
    masks["cluster" + std::to_string(cluster_of[static_cast<std::size_t>(i)])]
        .push_back(i);
  }
  return d;
}

}  // namespace ppl
