// SPDX-License-Identifier: MIT
#include "ppl/ppl.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "ppl/bench.hpp"

namespace {

thread_local std::string g_last_error;

void clear_error() { g_last_error.clear(); }

ppl_status fail(ppl_status status, const std::string &message) {
  g_last_error = message;
  return status;
}

/* Runs `body` and converts exceptions into status codes. */
template <typename Fn>
ppl_status guarded(Fn &&body) {
  try {
    clear_error();
    return body();
  } catch (const ppl::ConfigError &e) {
    return fail(PPL_ERR_CONFIG, e.what());
  } catch (const ppl::ParseError &e) {
    return fail(PPL_ERR_PARSE, e.what());
  } catch (const ppl::OracleError &e) {
    return fail(PPL_ERR_ORACLE, e.what());
  } catch (const ppl::DivergenceError &e) {
    return fail(PPL_ERR_DIVERGED, e.what());
  } catch (const ppl::IoError &e) {
    return fail(PPL_ERR_IO, e.what());
  } catch (const ppl::ContractError &e) {
    return fail(PPL_ERR_ARGUMENT, e.what());
  } catch (const std::invalid_argument &e) {
    return fail(PPL_ERR_ARGUMENT, e.what());
  } catch (const std::bad_alloc &) {
    return fail(PPL_ERR_INTERNAL, "out of memory");
  } catch (const std::exception &e) {
    return fail(PPL_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(PPL_ERR_INTERNAL, "unknown failure");
  }
}

char *copy_to_c_string(const std::string &text) {
  char *buffer = static_cast<char *>(std::malloc(text.size() + 1));
  if (buffer == nullptr) throw std::bad_alloc();
  std::memcpy(buffer, text.c_str(), text.size() + 1);
  return buffer;
}

ppl::Method parse_method(const char *method) {
  if (method == nullptr)
    throw ppl::ContractError("method must not be NULL");
  const std::string name(method);
  if (name == "plada") return ppl::Method::Plada;
  if (name == "ppala") return ppl::Method::Ppala;
  if (name == "penalty") return ppl::Method::Penalty;
  throw ppl::ContractError("unknown method '" + name +
                           "' (expected plada, ppala, or penalty)");
}

ppl::KktTolerances tolerances_from(const ppl_solver_options &o) {
  ppl::KktTolerances tol;
  if (o.eps_stationarity > 0.0) tol.stationarity = o.eps_stationarity;
  if (o.eps_feasibility > 0.0) tol.feasibility = o.eps_feasibility;
  if (o.eps_complementarity > 0.0) tol.complementarity = o.eps_complementarity;
  return tol;
}

std::uint64_t budget_from(const ppl_solver_options &o) {
  if (o.max_iters < 0)
    throw ppl::ContractError("max_iters must be non-negative");
  return o.max_iters == 0 ? 50000ULL
                          : static_cast<std::uint64_t>(o.max_iters);
}

ppl::PladaParams plada_from(const ppl_solver_options &o) {
  ppl::PladaParams p;
  if (o.alpha != 0.0) p.alpha = o.alpha;
  if (o.beta != 0.0) p.beta = o.beta;
  p.eta = o.eta;
  p.tau = o.tau;
  if (o.gamma0 != 0.0) p.gamma0 = o.gamma0;
  if (o.kappa != 0.0) p.kappa = o.kappa;
  p.lambda_cap = o.lambda_cap;
  p.max_iters = budget_from(o);
  p.early_stop = o.early_stop != 0;
  p.tol = tolerances_from(o);
  return p;
}

ppl::PpalaParams ppala_from(const ppl_solver_options &o) {
  ppl::PpalaParams p;
  if (o.alpha != 0.0) p.alpha = o.alpha;
  if (o.beta != 0.0) p.beta = o.beta;
  p.eta = o.eta;
  p.tau = o.tau;
  if (o.p != 0.0) p.p = o.p;
  if (o.q != 0.0) p.q = o.q;
  p.lambda_cap = o.lambda_cap;
  p.max_iters = budget_from(o);
  p.early_stop = o.early_stop != 0;
  p.tol = tolerances_from(o);
  return p;
}

ppl::PenaltySchedule penalty_from(const ppl_solver_options &o) {
  ppl::PenaltySchedule schedule;
  schedule.early_stop = o.early_stop != 0;
  schedule.tol = tolerances_from(o);
  return schedule;
}

}  // namespace

struct ppl_problem {
  ppl::ProblemSpec spec;
};

struct ppl_solution {
  ppl::SolveResult result;
  std::vector<ppl::TraceRecord> trace;
  std::string stop_reason;
};

extern "C" {

const char *ppl_status_message(ppl_status status) {
  switch (status) {
    case PPL_OK:
      return "ok";
    case PPL_ERR_ARGUMENT:
      return "invalid argument";
    case PPL_ERR_CONFIG:
      return "invalid configuration";
    case PPL_ERR_PARSE:
      return "parse failure";
    case PPL_ERR_ORACLE:
      return "problem oracle failure";
    case PPL_ERR_DIVERGED:
      return "solver diverged";
    case PPL_ERR_IO:
      return "input/output failure";
    case PPL_ERR_INTERNAL:
      return "internal failure";
  }
  return "unknown status";
}

const char *ppl_last_error(void) { return g_last_error.c_str(); }

const char *ppl_version(void) { return "1.0.0"; }

ppl_status ppl_problem_create_disk(ppl_problem **out) {
  return guarded([&]() -> ppl_status {
    if (out == nullptr)
      throw ppl::ContractError("output handle must not be NULL");
    *out = new ppl_problem{ppl::make_disk_problem()};
    return PPL_OK;
  });
}

ppl_status ppl_problem_create_qp(uint64_t seed, int32_t n, int32_t m,
                                 ppl_problem **out) {
  return guarded([&]() -> ppl_status {
    if (out == nullptr)
      throw ppl::ContractError("output handle must not be NULL");
    *out = new ppl_problem{ppl::make_nonconvex_qp(seed, n, m)};
    return PPL_OK;
  });
}

ppl_status ppl_problem_create_from_config(const char *config_path,
                                          ppl_problem **out) {
  return guarded([&]() -> ppl_status {
    if (config_path == nullptr || out == nullptr)
      throw ppl::ContractError("config path and output handle are required");
    const ppl::RunConfig cfg = ppl::load_config(config_path);
    *out = new ppl_problem{ppl::build_problem(cfg)};
    return PPL_OK;
  });
}

void ppl_problem_destroy(ppl_problem *problem) { delete problem; }

int32_t ppl_problem_dimension(const ppl_problem *problem) {
  return problem == nullptr ? -1
                            : static_cast<int32_t>(problem->spec.dimension);
}

int32_t ppl_problem_num_constraints(const ppl_problem *problem) {
  return problem == nullptr
             ? -1
             : static_cast<int32_t>(problem->spec.num_constraints);
}

ppl_status ppl_solver_options_init(ppl_solver_options *options,
                                   const char *method) {
  return guarded([&]() -> ppl_status {
    if (options == nullptr)
      throw ppl::ContractError("options pointer must not be NULL");
    const ppl::Method m = parse_method(method);
    *options = ppl_solver_options{};
    options->alpha = 10.0;
    options->beta = m == ppl::Method::Ppala ? 0.2 : 0.1;
    options->gamma0 = 0.1;
    options->kappa = 1.0;
    options->p = 1.0;
    options->q = 1.0;
    options->max_iters = 50000;
    options->early_stop = 1;
    const ppl::KktTolerances tol;
    options->eps_stationarity = tol.stationarity;
    options->eps_feasibility = tol.feasibility;
    options->eps_complementarity = tol.complementarity;
    return PPL_OK;
  });
}

ppl_status ppl_solve(const ppl_problem *problem, const char *method,
                     const ppl_solver_options *options, const double *x0,
                     int32_t x0_len, ppl_solution **out) {
  return guarded([&]() -> ppl_status {
    if (problem == nullptr || out == nullptr)
      throw ppl::ContractError("problem and output handle are required");
    const ppl::Method m = parse_method(method);
    ppl_solver_options defaults{};
    if (options == nullptr) {
      const ppl_status st = ppl_solver_options_init(&defaults, method);
      if (st != PPL_OK) return st;
      options = &defaults;
    }
    ppl::Vec start;
    if (x0 != nullptr) {
      if (x0_len != problem->spec.dimension)
        throw ppl::ContractError(
            "x0_len does not match the problem dimension");
      start = Eigen::Map<const ppl::Vec>(x0, x0_len);
    } else {
      start = ppl::default_start(problem->spec);
    }

    auto solution = std::make_unique<ppl_solution>();
    ppl::RunHooks hooks;
    hooks.trace = [&solution](const ppl::TraceRecord &row) {
      solution->trace.push_back(row);
    };
    switch (m) {
      case ppl::Method::Plada:
        solution->result =
            ppl::run_plada(problem->spec, plada_from(*options), start, hooks);
        break;
      case ppl::Method::Ppala:
        solution->result =
            ppl::run_ppala(problem->spec, ppala_from(*options), start, hooks);
        break;
      case ppl::Method::Penalty:
        solution->result = ppl::quadratic_penalty_baseline(
            problem->spec, penalty_from(*options), start, hooks);
        break;
    }
    solution->stop_reason = ppl::to_string(solution->result.stop_reason);
    *out = solution.release();
    return PPL_OK;
  });
}

void ppl_solution_destroy(ppl_solution *solution) { delete solution; }

ppl_status ppl_solution_primal(const ppl_solution *solution, double *buffer,
                               int32_t buffer_len) {
  return guarded([&]() -> ppl_status {
    if (solution == nullptr || buffer == nullptr)
      throw ppl::ContractError("solution and buffer are required");
    const ppl::Vec &x = solution->result.state.x;
    if (buffer_len < x.size())
      throw ppl::ContractError("buffer is smaller than the solution vector");
    Eigen::Map<ppl::Vec>(buffer, x.size()) = x;
    return PPL_OK;
  });
}

ppl_status ppl_solution_final_kkt(const ppl_solution *solution,
                                  ppl_kkt_report *out) {
  return guarded([&]() -> ppl_status {
    if (solution == nullptr || out == nullptr)
      throw ppl::ContractError("solution and output report are required");
    out->stationarity = solution->result.final_report.stationarity;
    out->feasibility = solution->result.final_report.feasibility;
    out->complementarity = solution->result.final_report.complementarity;
    out->dual_gap = solution->result.final_report.dual_gap;
    return PPL_OK;
  });
}

int64_t ppl_solution_iterations(const ppl_solution *solution) {
  return solution == nullptr
             ? -1
             : static_cast<int64_t>(solution->result.iterations);
}

int32_t ppl_solution_converged(const ppl_solution *solution) {
  return solution != nullptr && solution->result.converged ? 1 : 0;
}

const char *ppl_solution_stop_reason(const ppl_solution *solution) {
  return solution == nullptr ? "" : solution->stop_reason.c_str();
}

int64_t ppl_solution_trace_rows(const ppl_solution *solution) {
  return solution == nullptr ? -1
                             : static_cast<int64_t>(solution->trace.size());
}

ppl_status ppl_solution_trace_row(const ppl_solution *solution, int64_t row,
                                  double *out10) {
  return guarded([&]() -> ppl_status {
    if (solution == nullptr || out10 == nullptr)
      throw ppl::ContractError("solution and output buffer are required");
    if (row < 0 || row >= static_cast<int64_t>(solution->trace.size()))
      throw ppl::ContractError("trace row index out of range");
    const ppl::TraceRecord &r = solution->trace[static_cast<size_t>(row)];
    out10[0] = static_cast<double>(r.iter);
    out10[1] = r.elapsed_sec;
    out10[2] = r.objective;
    out10[3] = r.feasibility;
    out10[4] = r.stationarity;
    out10[5] = r.complementarity;
    out10[6] = r.dual_gap;
    out10[7] = r.lambda_norm;
    out10[8] = r.mu_norm;
    out10[9] = r.delta_k;
    return PPL_OK;
  });
}

void ppl_string_free(char *text) { std::free(text); }

ppl_status ppl_run_config(const char *config_path, const char *out_dir,
                          int64_t seed_override, char **summary_json,
                          int32_t *converged) {
  return guarded([&]() -> ppl_status {
    if (config_path == nullptr)
      throw ppl::ContractError("config path is required");
    ppl::RunConfig cfg = ppl::load_config(config_path);
    if (out_dir != nullptr) cfg.output_dir = out_dir;
    if (seed_override >= 0)
      cfg.seed = static_cast<std::uint64_t>(seed_override);
    const ppl::RunSummary summary = ppl::run_suite(cfg);
    if (summary_json != nullptr)
      *summary_json = copy_to_c_string(summary.summary_json);
    if (converged != nullptr)
      *converged = summary.result.converged ? 1 : 0;
    if (summary.result.stop_reason == ppl::StopReason::Diverged)
      return fail(PPL_ERR_DIVERGED,
                  "solver diverged at iteration " +
                      std::to_string(summary.result.iterations));
    return PPL_OK;
  });
}

ppl_status ppl_check_config(const char *config_path, char **report_json,
                            int32_t *pass) {
  return guarded([&]() -> ppl_status {
    if (config_path == nullptr)
      throw ppl::ContractError("config path is required");
    const ppl::RunConfig cfg = ppl::load_config(config_path);
    const ppl::CheckReport report = ppl::run_invariant_checks(cfg);
    if (report_json != nullptr)
      *report_json = copy_to_c_string(ppl::check_report_json(report));
    if (pass != nullptr) *pass = report.pass ? 1 : 0;
    return PPL_OK;
  });
}

ppl_status ppl_rate_from_csv(const char *trace_csv_path, int64_t T,
                             char **report_json) {
  return guarded([&]() -> ppl_status {
    if (trace_csv_path == nullptr)
      throw ppl::ContractError("trace path is required");
    if (T < 0) throw ppl::ContractError("T must be non-negative");
    const std::vector<ppl::TraceRecord> trace =
        ppl::read_trace_csv(trace_csv_path);
    const ppl::RateSummary summary =
        ppl::rate_summary(trace, static_cast<std::uint64_t>(T));
    if (report_json != nullptr)
      *report_json = copy_to_c_string(ppl::rate_report_json(summary));
    return PPL_OK;
  });
}

ppl_status ppl_estimate_from_config(const char *config_path, int64_t samples,
                                    uint64_t seed, char **report_json) {
  return guarded([&]() -> ppl_status {
    if (config_path == nullptr)
      throw ppl::ContractError("config path is required");
    if (samples < 0) throw ppl::ContractError("samples must be non-negative");
    const ppl::RunConfig cfg = ppl::load_config(config_path);
    const ppl::ProblemSpec prob = ppl::build_problem(cfg);
    const std::size_t count =
        samples == 0 ? 10000u : static_cast<std::size_t>(samples);
    const ppl::ConstantEstimates sampled =
        ppl::estimate_constants(prob, count, seed);
    if (report_json != nullptr)
      *report_json = copy_to_c_string(
          ppl::estimate_report_json(sampled, prob.constants));
    return PPL_OK;
  });
}

}  // extern "C"
