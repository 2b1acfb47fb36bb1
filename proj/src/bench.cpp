// SPDX-License-Identifier: MIT
#include "ppl/bench.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "rng.hpp"

namespace ppl {

namespace {

using nlohmann::json;

std::string trim(const std::string &text) {
  const auto begin = text.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  const auto end = text.find_last_not_of(" \t");
  return text.substr(begin, end - begin + 1);
}

double config_double(const std::string &key, const std::string &value) {
  std::string_view body = value;
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  double parsed = 0.0;
  const auto res =
      std::from_chars(body.data(), body.data() + body.size(), parsed);
  if (res.ec != std::errc{} || res.ptr != body.data() + body.size() ||
      !std::isfinite(parsed))
    throw ConfigError("config key '" + key + "': malformed number '" + value +
                      "'");
  return parsed;
}

std::uint64_t config_u64(const std::string &key, const std::string &value) {
  std::uint64_t parsed = 0;
  const auto res =
      std::from_chars(value.data(), value.data() + value.size(), parsed);
  if (res.ec != std::errc{} || res.ptr != value.data() + value.size())
    throw ConfigError("config key '" + key + "': malformed integer '" + value +
                      "'");
  return parsed;
}

Index config_index(const std::string &key, const std::string &value) {
  return static_cast<Index>(config_u64(key, value));
}

bool config_bool(const std::string &key, const std::string &value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on")
    return true;
  if (value == "false" || value == "0" || value == "no" || value == "off")
    return false;
  throw ConfigError("config key '" + key + "': expected a boolean, got '" +
                    value + "'");
}

const std::set<std::string> kProblems = {
    "disk", "qp", "fairness-dp", "fairness-eo", "intersectional", "mnpc"};
const std::set<std::string> kNonsmoothProblems = {"fairness-dp", "fairness-eo",
                                                  "intersectional"};

Vec parse_kappa_list(const std::string &text) {
  std::vector<double> values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ','))
    values.push_back(config_double("mnpc_kappa", trim(item)));
  if (values.empty())
    throw ConfigError("config key 'mnpc_kappa': empty value");
  return Eigen::Map<const Vec>(values.data(),
                               static_cast<Index>(values.size()));
}

// Zero-valued config knobs keep the per-method defaults (see RunConfig);
// eta/tau pass through because zero already means "derive" for the solvers.
PladaParams plada_params_from(const RunConfig &cfg) {
  PladaParams params;
  if (cfg.alpha != 0.0) params.alpha = cfg.alpha;
  if (cfg.beta != 0.0) params.beta = cfg.beta;
  params.eta = cfg.eta;
  params.tau = cfg.tau;
  if (cfg.gamma0 != 0.0) params.gamma0 = cfg.gamma0;
  if (cfg.kappa != 0.0) params.kappa = cfg.kappa;
  params.lambda_cap = cfg.lambda_cap;
  params.max_iters = cfg.max_iters;
  params.early_stop = cfg.early_stop;
  params.tol = cfg.tol;
  return params;
}

PpalaParams ppala_params_from(const RunConfig &cfg) {
  PpalaParams params;
  if (cfg.alpha != 0.0) params.alpha = cfg.alpha;
  if (cfg.beta != 0.0) params.beta = cfg.beta;
  params.eta = cfg.eta;
  params.tau = cfg.tau;
  if (cfg.p != 0.0) params.p = cfg.p;
  if (cfg.q != 0.0) params.q = cfg.q;
  params.lambda_cap = cfg.lambda_cap;
  params.max_iters = cfg.max_iters;
  params.early_stop = cfg.early_stop;
  params.tol = cfg.tol;
  return params;
}

PenaltySchedule penalty_schedule_from(const RunConfig &cfg) {
  PenaltySchedule schedule;
  schedule.rho0 = cfg.penalty_rho0;
  schedule.growth = cfg.penalty_growth;
  schedule.inner_iters = cfg.penalty_inner;
  schedule.outer_rounds = cfg.penalty_outer;
  schedule.tol = cfg.tol;
  schedule.early_stop = cfg.early_stop;
  return schedule;
}

json config_json(const RunConfig &cfg, const ProblemSpec &prob) {
  json j;
  j["problem"] = cfg.problem;
  j["method"] = to_string(cfg.method);
  j["seed"] = cfg.seed;
  j["max_iters"] = cfg.max_iters;
  j["early_stop"] = cfg.early_stop;
  j["trace_every"] = cfg.trace_every;
  j["output_dir"] = cfg.output_dir;
  j["eps_stationarity"] = cfg.tol.stationarity;
  j["eps_feasibility"] = cfg.tol.feasibility;
  j["eps_complementarity"] = cfg.tol.complementarity;
  j["dimension"] = prob.dimension;
  j["num_constraints"] = prob.num_constraints;
  if (cfg.method == Method::Plada) {
    const PladaParams derived =
        derive_plada_params(prob, plada_params_from(cfg));
    j["alpha"] = derived.alpha;
    j["beta"] = derived.beta;
    j["rho"] = derived.rho();
    j["eta"] = derived.eta;
    j["tau"] = derived.tau;
    j["gamma0"] = derived.gamma0;
    j["kappa"] = derived.kappa;
    j["lambda_cap"] = derived.lambda_cap;
  } else if (cfg.method == Method::Ppala) {
    const PpalaParams derived =
        derive_ppala_params(prob, ppala_params_from(cfg));
    j["alpha"] = derived.alpha;
    j["beta"] = derived.beta;
    j["rho"] = derived.rho();
    j["eta"] = derived.eta;
    j["tau"] = derived.tau;
    j["p"] = derived.p;
    j["q"] = derived.q;
    j["lambda_cap"] = derived.lambda_cap;
  } else {
    j["penalty_rho0"] = cfg.penalty_rho0;
    j["penalty_growth"] = cfg.penalty_growth;
    j["penalty_inner"] = cfg.penalty_inner;
    j["penalty_outer"] = cfg.penalty_outer;
  }
  return j;
}

json rate_json(const RateSummary &r) {
  json j;
  j["insufficient"] = r.insufficient;
  j["T"] = r.T;
  if (r.insufficient) return j;
  j["stationarity_sq_avg_T"] = r.stationarity_sq_avg_T;
  j["stationarity_sq_avg_4T"] = r.stationarity_sq_avg_4T;
  j["feasibility_sq_avg_T"] = r.feasibility_sq_avg_T;
  j["feasibility_sq_avg_4T"] = r.feasibility_sq_avg_4T;
  j["complementarity_avg_T"] = r.complementarity_avg_T;
  j["complementarity_avg_4T"] = r.complementarity_avg_4T;
  auto ratio_field = [](double ratio, bool converged) {
    if (converged) return json("converged");
    if (std::isinf(ratio)) return json("infinite");
    return json(ratio);
  };
  j["stationarity_ratio"] =
      ratio_field(r.stationarity_ratio, r.stationarity_converged);
  j["feasibility_ratio"] =
      ratio_field(r.feasibility_ratio, r.feasibility_converged);
  j["complementarity_ratio"] =
      ratio_field(r.complementarity_ratio, r.complementarity_converged);
  return j;
}

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::Plada:
      return "plada";
    case Method::Ppala:
      return "ppala";
    case Method::Penalty:
      return "penalty";
  }
  return "unknown";
}

RunConfig parse_config_text(const std::string &text) {
  RunConfig cfg;
  cfg.alpha = 0.0;  // resolved after parsing
  std::istringstream in(text);
  std::string line;
  std::uint64_t line_no = 0;
  std::set<std::string> seen;
  bool beta_set = false;

  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": empty key or value");
    if (!seen.insert(key).second)
      throw ConfigError("config key '" + key + "' appears more than once");

    if (key == "problem") {
      cfg.problem = value;
    } else if (key == "method") {
      if (value == "plada")
        cfg.method = Method::Plada;
      else if (value == "ppala")
        cfg.method = Method::Ppala;
      else if (value == "penalty")
        cfg.method = Method::Penalty;
      else
        throw ConfigError(
            "config key 'method': expected plada, ppala, or penalty, got '" +
            value + "'");
    } else if (key == "alpha") {
      cfg.alpha = config_double(key, value);
    } else if (key == "beta") {
      cfg.beta = config_double(key, value);
      beta_set = true;
    } else if (key == "eta") {
      cfg.eta = config_double(key, value);
    } else if (key == "tau") {
      cfg.tau = config_double(key, value);
    } else if (key == "gamma0") {
      cfg.gamma0 = config_double(key, value);
    } else if (key == "kappa") {
      cfg.kappa = config_double(key, value);
    } else if (key == "p") {
      cfg.p = config_double(key, value);
    } else if (key == "q") {
      cfg.q = config_double(key, value);
    } else if (key == "lambda_cap") {
      cfg.lambda_cap = config_double(key, value);
    } else if (key == "max_iters") {
      cfg.max_iters = config_u64(key, value);
    } else if (key == "early_stop") {
      cfg.early_stop = config_bool(key, value);
    } else if (key == "eps_stationarity") {
      cfg.tol.stationarity = config_double(key, value);
    } else if (key == "eps_feasibility") {
      cfg.tol.feasibility = config_double(key, value);
    } else if (key == "eps_complementarity") {
      cfg.tol.complementarity = config_double(key, value);
    } else if (key == "seed") {
      cfg.seed = config_u64(key, value);
    } else if (key == "trace_every") {
      cfg.trace_every = config_u64(key, value);
      if (cfg.trace_every == 0)
        throw ConfigError("config key 'trace_every': must be >= 1");
    } else if (key == "output_dir") {
      cfg.output_dir = value;
    } else if (key == "qp_n") {
      cfg.qp_n = config_index(key, value);
    } else if (key == "qp_m") {
      cfg.qp_m = config_index(key, value);
    } else if (key == "rows") {
      cfg.rows = config_index(key, value);
    } else if (key == "dim") {
      cfg.dim = config_index(key, value);
    } else if (key == "clusters") {
      cfg.clusters = config_index(key, value);
    } else if (key == "tolerance_c") {
      cfg.tolerance_c = config_double(key, value);
    } else if (key == "eo_formulation") {
      if (value != "max" && value != "two")
        throw ConfigError("config: eo_formulation must be 'max' or 'two'");
      cfg.eo_formulation = value;
    } else if (key == "classes") {
      cfg.classes = config_index(key, value);
    } else if (key == "per_class") {
      cfg.per_class = config_index(key, value);
    } else if (key == "mnpc_kappa") {
      cfg.mnpc_kappa = value;
    } else if (key == "theta") {
      cfg.theta = config_double(key, value);
    } else if (key == "data_path") {
      cfg.data_path = value;
    } else if (key == "data_format") {
      if (value != "libsvm" && value != "csv")
        throw ConfigError(
            "config key 'data_format': expected libsvm or csv, got '" + value +
            "'");
      cfg.data_format = value;
    } else if (key == "label_column") {
      cfg.label_column = value;
    } else if (key == "positive_label") {
      cfg.positive_label = value;
    } else if (key == "group_column") {
      cfg.group_column = value;
    } else if (key == "group_value") {
      cfg.group_value = value;
    } else if (key == "group_feature_index") {
      cfg.group_feature_index = config_index(key, value);
    } else if (key == "group_threshold") {
      cfg.group_threshold = config_double(key, value);
    } else if (key == "normalize") {
      cfg.normalize = config_bool(key, value);
    } else if (key == "penalty_rho0") {
      cfg.penalty_rho0 = config_double(key, value);
    } else if (key == "penalty_growth") {
      cfg.penalty_growth = config_double(key, value);
    } else if (key == "penalty_inner") {
      cfg.penalty_inner = config_u64(key, value);
    } else if (key == "penalty_outer") {
      cfg.penalty_outer = config_u64(key, value);
    } else {
      throw ConfigError("unknown configuration key '" + key + "'");
    }
  }

  if (!kProblems.count(cfg.problem))
    throw ConfigError("config key 'problem': unknown problem '" + cfg.problem +
                      "'");
  if (cfg.method != Method::Plada && kNonsmoothProblems.count(cfg.problem))
    throw ConfigError("problem '" + cfg.problem +
                      "' has nonsmooth constraints; only the plada method "
                      "applies");

  // Per-method defaults for knobs left unset.
  if (cfg.alpha == 0.0) cfg.alpha = 10.0;
  if (!beta_set || cfg.beta == 0.0)
    cfg.beta = cfg.method == Method::Ppala ? 0.2 : 0.1;
  if (cfg.gamma0 == 0.0) cfg.gamma0 = 0.1;
  if (cfg.kappa == 0.0) cfg.kappa = 1.0;
  if (cfg.p == 0.0) cfg.p = 1.0;
  if (cfg.q == 0.0) cfg.q = 1.0;
  return cfg;
}

RunConfig load_config(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

ProblemSpec build_problem(const RunConfig &cfg) {
  if (cfg.problem == "disk") return make_disk_problem();
  if (cfg.problem == "qp")
    return make_nonconvex_qp(cfg.seed, cfg.qp_n, cfg.qp_m);
  if (cfg.problem == "mnpc")
    return make_mnpc_linear(cfg.seed, cfg.classes, cfg.per_class,
                            parse_kappa_list(cfg.mnpc_kappa), cfg.theta,
                            cfg.dim);

  // Fairness family: synthetic by default, file-backed when configured.
  Dataset data;
  bool synthetic = cfg.data_path.empty();
  if (synthetic) {
    data = make_synthetic_fairness_data(cfg.seed, cfg.rows, cfg.dim,
                                        cfg.clusters);
  } else {
    std::string format = cfg.data_format;
    if (format.empty()) {
      const auto dot = cfg.data_path.rfind('.');
      format = (dot != std::string::npos &&
                cfg.data_path.substr(dot) == ".csv")
                   ? "csv"
                   : "libsvm";
    }
    if (format == "csv") {
      if (cfg.label_column.empty() || cfg.positive_label.empty())
        throw ConfigError(
            "csv data requires label_column and positive_label");
      std::vector<std::string> group_cols;
      if (!cfg.group_column.empty()) group_cols.push_back(cfg.group_column);
      data = load_csv(cfg.data_path, cfg.label_column, cfg.positive_label,
                      group_cols);
    } else {
      data = load_libsvm(cfg.data_path);
    }
    GroupSpec spec;
    spec.name = "group";
    if (!cfg.group_column.empty()) {
      if (cfg.group_value.empty())
        throw ConfigError("group_column requires group_value");
      spec.source = GroupSpec::Source::TextColumn;
      spec.column = cfg.group_column;
      spec.values = {cfg.group_value};
    } else if (cfg.group_feature_index >= 0) {
      spec.source = GroupSpec::Source::FeatureThreshold;
      spec.feature_index = cfg.group_feature_index;
      spec.threshold = cfg.group_threshold;
    } else {
      throw ConfigError(
          "file-backed fairness problems need group_column+group_value or "
          "group_feature_index");
    }
    data = extract_group_masks(data, {spec});
  }
  if (cfg.normalize) normalize_min_max(data);

  FairnessOptions opts;
  opts.tolerance_c = cfg.tolerance_c;
  opts.eo_two_constraints = (cfg.eo_formulation == "two");
  if (cfg.problem == "fairness-dp")
    return make_fairness_logistic(data, FairnessConstraint::DemographicParity,
                                  opts);
  if (cfg.problem == "fairness-eo")
    return make_fairness_logistic(data, FairnessConstraint::EqualOpportunity,
                                  opts);
  // intersectional
  if (synthetic) {
    for (Index i = 0; i < cfg.clusters; ++i)
      opts.intersectional_masks.push_back("cluster" + std::to_string(i));
  } else {
    opts.intersectional_masks = {"group", "group_c"};
  }
  return make_fairness_logistic(data, FairnessConstraint::Intersectional,
                                opts);
}

Vec default_start(const ProblemSpec &p) {
  return p.regularizer.domain_center(p.dimension);
}

RunSummary run_suite(const RunConfig &cfg) {
  const ProblemSpec prob = build_problem(cfg);
  const Vec x0 = default_start(prob);

  std::vector<TraceRecord> full;
  RunHooks hooks;
  hooks.trace = [&full](const TraceRecord &row) { full.push_back(row); };

  RunSummary summary;
  bool diverged = false;
  std::string failure;
  std::uint64_t failure_iteration = 0;
  try {
    switch (cfg.method) {
      case Method::Plada:
        summary.result = run_plada(prob, plada_params_from(cfg), x0, hooks);
        break;
      case Method::Ppala:
        summary.result = run_ppala(prob, ppala_params_from(cfg), x0, hooks);
        break;
      case Method::Penalty:
        summary.result =
            quadratic_penalty_baseline(prob, penalty_schedule_from(cfg), x0,
                                       hooks);
        break;
    }
  } catch (const DivergenceError &e) {
    diverged = true;
    failure = e.what();
    failure_iteration = e.iteration();
    summary.result.stop_reason = StopReason::Diverged;
    summary.result.converged = false;
    summary.result.iterations = failure_iteration;
    if (!full.empty()) {
      const TraceRecord &last = full.back();
      summary.result.final_report.stationarity = last.stationarity;
      summary.result.final_report.feasibility = last.feasibility;
      summary.result.final_report.complementarity = last.complementarity;
      summary.result.final_report.dual_gap = last.dual_gap;
    }
  }

  // Subsample, always keeping the first and final rows.
  for (const TraceRecord &row : full)
    if (row.iter % cfg.trace_every == 0) summary.trace.push_back(row);
  if (!full.empty() &&
      (summary.trace.empty() ||
       summary.trace.back().iter != full.back().iter))
    summary.trace.push_back(full.back());

  json j;
  j["config"] = config_json(cfg, prob);
  j["final"] = {
      {"stationarity", summary.result.final_report.stationarity},
      {"feasibility", summary.result.final_report.feasibility},
      {"complementarity", summary.result.final_report.complementarity},
      {"dual_gap", summary.result.final_report.dual_gap},
  };
  j["iterations"] = summary.result.iterations;
  j["wall_sec"] = summary.result.wall_sec;
  j["stop_reason"] = to_string(summary.result.stop_reason);
  j["converged"] = summary.result.converged;
  j["best_iterate"] = summary.result.best_iterate;
  j["rate_summary"] = rate_json(rate_summary(full));
  if (diverged) {
    j["failure"] = failure;
    j["failure_iteration"] = failure_iteration;
  }
  summary.summary_json = j.dump(2);

  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(cfg.output_dir, ec);
  if (ec)
    throw IoError("cannot create output directory: " + cfg.output_dir);
  write_trace_csv((fs::path(cfg.output_dir) / "trace.csv").string(),
                  summary.trace);
  std::ofstream out(fs::path(cfg.output_dir) / "summary.json",
                    std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write summary.json in " + cfg.output_dir);
  out << summary.summary_json << '\n';
  return summary;
}

RandomIterateReport random_iterate_report(const std::vector<TraceRecord> &trace,
                                          std::uint64_t seed,
                                          const KktTolerances &tol,
                                          std::size_t draws) {
  std::vector<const TraceRecord *> steps;
  steps.reserve(trace.size());
  for (const TraceRecord &row : trace)
    if (row.iter >= 1) steps.push_back(&row);
  if (steps.empty())
    throw ContractError("random_iterate_report: trace has no step rows");

  detail::Rng rng(seed);
  RandomIterateReport report;
  report.draws = draws;
  std::size_t within = 0;
  for (std::size_t d = 0; d < draws; ++d) {
    const TraceRecord &row = *steps[rng.bounded(steps.size())];
    const bool ok = row.stationarity <= tol.stationarity &&
                    row.feasibility <= tol.feasibility &&
                    row.complementarity <= tol.complementarity;
    within += ok ? 1 : 0;
    report.mean_stationarity += row.stationarity;
    report.mean_feasibility += row.feasibility;
    report.mean_complementarity += row.complementarity;
  }
  const auto n = static_cast<double>(draws);
  report.fraction_within_tol = static_cast<double>(within) / n;
  report.mean_stationarity /= n;
  report.mean_feasibility /= n;
  report.mean_complementarity /= n;
  return report;
}

CheckReport run_invariant_checks(const RunConfig &cfg) {
  if (cfg.method == Method::Penalty)
    throw ConfigError("invariant checks apply to plada and ppala runs only");
  const ProblemSpec prob = build_problem(cfg);
  const Vec x0 = default_start(prob);
  const SolverMode mode =
      cfg.method == Method::Ppala ? SolverMode::Ppala : SolverMode::Plada;

  double alpha = 0.0, beta = 0.0, rho = 0.0, eta = 0.0, tau = 0.0;
  double gamma_cap = 0.0;
  PladaParams plada_params;
  PpalaParams ppala_params;
  if (mode == SolverMode::Plada) {
    plada_params = derive_plada_params(prob, plada_params_from(cfg));
    alpha = plada_params.alpha;
    beta = plada_params.beta;
    rho = plada_params.rho();
    eta = plada_params.eta;
    tau = plada_params.tau;
    gamma_cap = plada_params.gamma0;
  } else {
    ppala_params = derive_ppala_params(prob, ppala_params_from(cfg));
    alpha = ppala_params.alpha;
    beta = ppala_params.beta;
    rho = ppala_params.rho();
    eta = ppala_params.eta;
    tau = ppala_params.tau;
  }

  CheckReport report;
  report.descent_asserted =
      mode == SolverMode::Ppala ||
      plada_params.x_update == PladaParams::XUpdate::ExactSubproblem;
  report.nu_min = 0.0;

  auto merit_at = [&](const IterateState &s) {
    return mode == SolverMode::Plada ? eval_p_lagrangian(prob, s, alpha, beta)
                                     : eval_ppal(prob, s, alpha, beta);
  };

  std::vector<double> merit_series;  // ppala merit per completed iteration
  double cached_merit = 0.0;
  bool merit_cached = false;
  const bool closure_applies = cfg.lambda_cap <= 0.0;

  RunHooks hooks;
  hooks.on_step = [&](const StepEvent &ev) {
    const bool checked = mode == SolverMode::Plada || ev.prev.k >= 1;
    double merit_next = 0.0;
    bool have_merit_next = false;
    if (checked) {
      const RelationReport relations = check_iterate_relations(
          ev.prev, ev.next, rho, gamma_cap, prob.constants.M_g, ev.delta_k,
          mode);
      ++report.relations_checked;
      if (!relations.all()) ++report.relations_failed;

      const double merit_prev =
          merit_cached ? cached_merit : merit_at(ev.prev);
      merit_next = merit_at(ev.next);
      have_merit_next = true;
      const DescentCheck descent = check_descent(
          merit_prev, merit_next, (ev.next.x - ev.prev.x).norm(),
          (ev.next.u - ev.prev.u).norm(), prob.constants, eta, tau, rho,
          ev.delta_k, mode);
      ++report.descent_checked;
      if (!descent.pass) ++report.descent_failed;
    }
    if (mode == SolverMode::Ppala && !have_merit_next) {
      merit_next = merit_at(ev.next);
      have_merit_next = true;
    }
    if (have_merit_next) {
      cached_merit = merit_next;
      merit_cached = true;
      if (mode == SolverMode::Ppala) merit_series.push_back(merit_next);
    }

    report.nu_min = std::min(report.nu_min, ev.nu.minCoeff());
    for (Index j = 0; j < ev.u_inner.size(); ++j)
      if (ev.u_inner(j) >= 0.0)
        report.max_interior_nu =
            std::max(report.max_interior_nu, std::abs(ev.nu(j)));
    if (closure_applies) {
      const Vec lambda_dev =
          ev.next.lambda - ev.next.mu - rho * (ev.g_next + ev.next.u);
      const Vec z_dev =
          ev.next.z - (ev.next.lambda - ev.next.mu) / alpha;
      report.max_closure_dev =
          std::max({report.max_closure_dev,
                    lambda_dev.lpNorm<Eigen::Infinity>(),
                    z_dev.lpNorm<Eigen::Infinity>()});
    }
  };

  SolveResult result;
  if (mode == SolverMode::Plada)
    result = run_plada(prob, plada_params, x0, hooks);
  else
    result = run_ppala(prob, ppala_params, x0, hooks);
  report.iterations = result.iterations;

  // Merit-sequence settling: consecutive 1000-iteration window spreads after
  // a 10000-iteration burn-in may grow by at most 2x (noise floor 1e-12).
  report.merit_windows_ok = true;
  report.merit_window_ratio = 0.0;
  constexpr std::size_t kBurnIn = 10000, kWindow = 1000;
  if (mode == SolverMode::Ppala &&
      merit_series.size() >= kBurnIn + 2 * kWindow) {
    double prev_spread = -1.0;
    for (std::size_t begin = kBurnIn; begin + kWindow <= merit_series.size();
         begin += kWindow) {
      double lo = merit_series[begin], hi = merit_series[begin];
      for (std::size_t i = begin; i < begin + kWindow; ++i) {
        lo = std::min(lo, merit_series[i]);
        hi = std::max(hi, merit_series[i]);
      }
      const double spread = hi - lo;
      if (prev_spread >= 0.0 && spread > 1e-12) {
        const double ratio = prev_spread > 0.0
                                 ? spread / prev_spread
                                 : std::numeric_limits<double>::infinity();
        report.merit_window_ratio = std::max(report.merit_window_ratio, ratio);
        if (ratio > 2.0) report.merit_windows_ok = false;
      }
      prev_spread = spread;
    }
  }

  report.pass = report.relations_failed == 0 &&
                (!report.descent_asserted || report.descent_failed == 0) &&
                report.nu_min >= -1e-10 && report.max_interior_nu <= 1e-10 &&
                (!closure_applies || report.max_closure_dev <= 1e-10) &&
                report.merit_windows_ok;
  return report;
}

std::string check_report_json(const CheckReport &report) {
  json j;
  j["iterations"] = report.iterations;
  j["relations_checked"] = report.relations_checked;
  j["relations_failed"] = report.relations_failed;
  j["descent_checked"] = report.descent_checked;
  j["descent_failed"] = report.descent_failed;
  j["descent_asserted"] = report.descent_asserted;
  j["nu_min"] = report.nu_min;
  j["max_interior_nu"] = report.max_interior_nu;
  j["max_closure_dev"] = report.max_closure_dev;
  j["merit_window_ratio"] = report.merit_window_ratio;
  j["merit_windows_ok"] = report.merit_windows_ok;
  j["pass"] = report.pass;
  return j.dump(2);
}

std::string rate_report_json(const RateSummary &summary) {
  return rate_json(summary).dump(2);
}

std::string estimate_report_json(const ConstantEstimates &sampled,
                                 const ConstantEstimates &declared) {
  auto constants_json = [](const ConstantEstimates &c) {
    json j;
    j["L_f"] = c.L_f;
    j["L_g"] = c.L_g;
    j["M_g"] = c.M_g;
    j["B_g"] = c.B_g;
    j["B_u"] = c.B_u;
    j["B_lambda"] = c.B_lambda;
    j["provenance"] =
        c.provenance == ConstantEstimates::Provenance::UserSupplied
            ? "user-supplied"
            : "sampled";
    return j;
  };
  json j;
  j["sampled"] = constants_json(sampled);
  j["declared"] = constants_json(declared);
  return j.dump(2);
}

unsigned solve_thread_cap() {
  if (const char *env = std::getenv("PPL_SOLVE_THREADS")) {
    char *end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value > 0)
      return static_cast<unsigned>(value);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::Converged:
      return "converged";
    case StopReason::Budget:
      return "budget";
    case StopReason::Diverged:
      return "diverged";
  }
  return "unknown";
}

}  // namespace ppl
