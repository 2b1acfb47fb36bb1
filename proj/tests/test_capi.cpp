// SPDX-License-Identifier: MIT
//
// Black-box tests for the shared-library C interface.  This binary links only
// the `ppl` shared library and includes only the public C header, mirroring
// how an external (non-C++) caller consumes the solver.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ppl/ppl.h"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path scratch_dir(const std::string &name) {
  const fs::path dir = fs::temp_directory_path() / ("ppl-capi-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const fs::path &dir, const std::string &name,
                    const std::string &text) {
  const fs::path path = dir / name;
  std::ofstream out(path);
  out << text;
  out.close();
  return path;
}

std::string str(const char *s) { return s == nullptr ? std::string() : s; }

constexpr double kRoot2Inv = 0.70710678118654752440;

}  // namespace

TEST_CASE("version and status messages") {
  CHECK(str(ppl_version()) == "1.0.0");

  const ppl_status codes[] = {PPL_OK,           PPL_ERR_ARGUMENT,
                              PPL_ERR_CONFIG,   PPL_ERR_PARSE,
                              PPL_ERR_ORACLE,   PPL_ERR_DIVERGED,
                              PPL_ERR_IO,       PPL_ERR_INTERNAL};
  for (ppl_status code : codes) CHECK_FALSE(str(ppl_status_message(code)).empty());
  CHECK(str(ppl_status_message(PPL_OK)) == "ok");
  CHECK(str(ppl_status_message(PPL_ERR_DIVERGED)) == "solver diverged");
  CHECK(str(ppl_status_message(static_cast<ppl_status>(99))) ==
        "unknown status");
}

TEST_CASE("problem handles: disk and qp") {
  ppl_problem *disk = nullptr;
  REQUIRE(ppl_problem_create_disk(&disk) == PPL_OK);
  REQUIRE(disk != nullptr);
  CHECK(ppl_problem_dimension(disk) == 2);
  CHECK(ppl_problem_num_constraints(disk) == 1);
  ppl_problem_destroy(disk);

  ppl_problem *qp = nullptr;
  REQUIRE(ppl_problem_create_qp(3, 4, 2, &qp) == PPL_OK);
  CHECK(ppl_problem_dimension(qp) == 4);
  CHECK(ppl_problem_num_constraints(qp) == 2);
  ppl_problem_destroy(qp);

  // Invalid sizes surface as argument errors with a readable message.
  ppl_problem *bad = nullptr;
  CHECK(ppl_problem_create_qp(3, 1, 2, &bad) == PPL_ERR_ARGUMENT);
  CHECK_FALSE(str(ppl_last_error()).empty());
  CHECK(bad == nullptr);

  CHECK(ppl_problem_create_disk(nullptr) == PPL_ERR_ARGUMENT);

  // NULL-handle accessors report sentinel values instead of crashing.
  CHECK(ppl_problem_dimension(nullptr) == -1);
  CHECK(ppl_problem_num_constraints(nullptr) == -1);
  ppl_problem_destroy(nullptr);
}

TEST_CASE("problem from a config file") {
  const fs::path dir = scratch_dir("from-config");
  const fs::path cfg = write_file(dir, "qp.cfg",
                                  "problem = qp\n"
                                  "qp_n = 6\n"
                                  "qp_m = 2\n"
                                  "method = plada\n");

  ppl_problem *prob = nullptr;
  REQUIRE(ppl_problem_create_from_config(cfg.string().c_str(), &prob) ==
          PPL_OK);
  CHECK(ppl_problem_dimension(prob) == 6);
  CHECK(ppl_problem_num_constraints(prob) == 2);
  ppl_problem_destroy(prob);

  ppl_problem *missing = nullptr;
  CHECK(ppl_problem_create_from_config((dir / "absent.cfg").string().c_str(),
                                       &missing) == PPL_ERR_IO);
  CHECK(missing == nullptr);

  const fs::path bad = write_file(dir, "bad.cfg", "problem = moon\n");
  CHECK(ppl_problem_create_from_config(bad.string().c_str(), &missing) ==
        PPL_ERR_CONFIG);

  CHECK(ppl_problem_create_from_config(nullptr, &missing) ==
        PPL_ERR_ARGUMENT);
}

TEST_CASE("solver option defaults per method") {
  ppl_solver_options opts;
  REQUIRE(ppl_solver_options_init(&opts, "plada") == PPL_OK);
  CHECK(opts.alpha == 10.0);
  CHECK(opts.beta == 0.1);
  CHECK(opts.gamma0 == 0.1);
  CHECK(opts.kappa == 1.0);
  CHECK(opts.p == 1.0);
  CHECK(opts.q == 1.0);
  CHECK(opts.eta == 0.0);  // zero means "derive from problem constants"
  CHECK(opts.tau == 0.0);
  CHECK(opts.lambda_cap == 0.0);
  CHECK(opts.max_iters == 50000);
  CHECK(opts.early_stop == 1);
  CHECK(opts.eps_stationarity == doctest::Approx(1e-3));
  CHECK(opts.eps_feasibility == doctest::Approx(1e-3));
  CHECK(opts.eps_complementarity == doctest::Approx(1e-3));

  REQUIRE(ppl_solver_options_init(&opts, "ppala") == PPL_OK);
  CHECK(opts.beta == 0.2);
  CHECK(opts.alpha == 10.0);

  REQUIRE(ppl_solver_options_init(&opts, "penalty") == PPL_OK);
  CHECK(opts.beta == 0.1);

  CHECK(ppl_solver_options_init(&opts, "sgd") == PPL_ERR_ARGUMENT);
  CHECK_FALSE(str(ppl_last_error()).empty());
  CHECK(ppl_solver_options_init(nullptr, "plada") == PPL_ERR_ARGUMENT);
}

TEST_CASE("solve the disk problem with plada through the C API") {
  ppl_problem *disk = nullptr;
  REQUIRE(ppl_problem_create_disk(&disk) == PPL_OK);

  ppl_solver_options opts;
  REQUIRE(ppl_solver_options_init(&opts, "plada") == PPL_OK);
  opts.eta = 0.01;  // accepted with a warning; converges well within budget

  ppl_solution *sol = nullptr;
  REQUIRE(ppl_solve(disk, "plada", &opts, nullptr, 0, &sol) == PPL_OK);
  REQUIRE(sol != nullptr);

  CHECK(ppl_solution_converged(sol) == 1);
  CHECK(str(ppl_solution_stop_reason(sol)) == "converged");
  const int64_t iters = ppl_solution_iterations(sol);
  CHECK(iters > 0);
  CHECK(iters < 50000);

  double x[2] = {0.0, 0.0};
  REQUIRE(ppl_solution_primal(sol, x, 2) == PPL_OK);
  CHECK(std::fabs(x[0] + kRoot2Inv) <= 1e-3);
  CHECK(std::fabs(x[1] + kRoot2Inv) <= 1e-3);

  ppl_kkt_report report;
  REQUIRE(ppl_solution_final_kkt(sol, &report) == PPL_OK);
  CHECK(report.stationarity <= 1e-3);
  CHECK(report.feasibility <= 1e-3);
  CHECK(report.complementarity <= 1e-3);
  CHECK(report.dual_gap >= 0.0);

  // Full trace: one row per iteration plus the starting point.
  const int64_t rows = ppl_solution_trace_rows(sol);
  CHECK(rows == iters + 1);

  double row0[10];
  REQUIRE(ppl_solution_trace_row(sol, 0, row0) == PPL_OK);
  CHECK(row0[0] == 0.0);                     // iter
  CHECK(row0[1] >= 0.0);                     // elapsed_sec
  CHECK(row0[2] == 0.0);                     // objective at the center
  CHECK(row0[3] == 0.0);                     // feasible start
  CHECK(row0[4] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(row0[5] == 0.0);                     // complementarity (nu = 0)
  CHECK(row0[6] == 0.0);                     // dual gap (lambda = mu = 0)
  CHECK(row0[7] == 0.0);                     // |lambda|
  CHECK(row0[8] == 0.0);                     // |mu|
  CHECK(row0[9] == 1.0);                     // delta_0 = kappa / 1

  double last[10];
  REQUIRE(ppl_solution_trace_row(sol, rows - 1, last) == PPL_OK);
  CHECK(last[0] == static_cast<double>(iters));

  double out10[10];
  CHECK(ppl_solution_trace_row(sol, rows, out10) == PPL_ERR_ARGUMENT);
  CHECK(ppl_solution_trace_row(sol, -1, out10) == PPL_ERR_ARGUMENT);
  CHECK(ppl_solution_trace_row(nullptr, 0, out10) == PPL_ERR_ARGUMENT);

  double tiny[1];
  CHECK(ppl_solution_primal(sol, tiny, 1) == PPL_ERR_ARGUMENT);
  CHECK(ppl_solution_primal(sol, nullptr, 2) == PPL_ERR_ARGUMENT);
  CHECK(ppl_solution_final_kkt(sol, nullptr) == PPL_ERR_ARGUMENT);

  ppl_solution_destroy(sol);

  // Invalid invocations never touch the output handle.
  ppl_solution *none = nullptr;
  double start3[3] = {0.0, 0.0, 0.0};
  CHECK(ppl_solve(disk, "plada", &opts, start3, 3, &none) ==
        PPL_ERR_ARGUMENT);
  CHECK(none == nullptr);
  CHECK(ppl_solve(disk, "sgd", &opts, nullptr, 0, &none) == PPL_ERR_ARGUMENT);
  CHECK(ppl_solve(disk, nullptr, &opts, nullptr, 0, &none) ==
        PPL_ERR_ARGUMENT);
  CHECK(ppl_solve(nullptr, "plada", &opts, nullptr, 0, &none) ==
        PPL_ERR_ARGUMENT);
  CHECK(ppl_solve(disk, "plada", &opts, nullptr, 0, nullptr) ==
        PPL_ERR_ARGUMENT);

  ppl_problem_destroy(disk);

  // NULL-solution accessors report sentinels.
  CHECK(ppl_solution_iterations(nullptr) == -1);
  CHECK(ppl_solution_converged(nullptr) == 0);
  CHECK(str(ppl_solution_stop_reason(nullptr)).empty());
  CHECK(ppl_solution_trace_rows(nullptr) == -1);
  ppl_solution_destroy(nullptr);
}

TEST_CASE("solve the disk problem with ppala through the C API") {
  ppl_problem *disk = nullptr;
  REQUIRE(ppl_problem_create_disk(&disk) == PPL_OK);

  ppl_solver_options opts;
  REQUIRE(ppl_solver_options_init(&opts, "ppala") == PPL_OK);
  opts.q = 0.7;  // faster proximal-weight decay; converges in ~1.5k iterations

  ppl_solution *sol = nullptr;
  REQUIRE(ppl_solve(disk, "ppala", &opts, nullptr, 0, &sol) == PPL_OK);
  CHECK(ppl_solution_converged(sol) == 1);
  CHECK(ppl_solution_iterations(sol) < 5000);

  double x[2];
  REQUIRE(ppl_solution_primal(sol, x, 2) == PPL_OK);
  CHECK(std::fabs(x[0] + kRoot2Inv) <= 1e-3);
  CHECK(std::fabs(x[1] + kRoot2Inv) <= 1e-3);

  ppl_solution_destroy(sol);

  // An explicit interior start point is accepted as well.
  const double start[2] = {0.5, -0.5};
  REQUIRE(ppl_solve(disk, "ppala", &opts, start, 2, &sol) == PPL_OK);
  CHECK(ppl_solution_converged(sol) == 1);
  ppl_solution_destroy(sol);

  ppl_problem_destroy(disk);
}

TEST_CASE("solve with NULL options falls back to method defaults") {
  ppl_problem *disk = nullptr;
  REQUIRE(ppl_problem_create_disk(&disk) == PPL_OK);

  ppl_solution *sol = nullptr;
  REQUIRE(ppl_solve(disk, "penalty", nullptr, nullptr, 0, &sol) == PPL_OK);
  CHECK(ppl_solution_iterations(sol) > 0);
  CHECK(ppl_solution_trace_rows(sol) == ppl_solution_iterations(sol) + 1);
  CHECK_FALSE(str(ppl_solution_stop_reason(sol)).empty());
  ppl_solution_destroy(sol);
  ppl_problem_destroy(disk);
}

TEST_CASE("solver divergence is reported as a status code") {
  ppl_problem *disk = nullptr;
  REQUIRE(ppl_problem_create_disk(&disk) == PPL_OK);

  ppl_solver_options opts;
  REQUIRE(ppl_solver_options_init(&opts, "plada") == PPL_OK);
  opts.tau = 1e308;  // slack step large enough to blow up immediately
  opts.max_iters = 50;

  ppl_solution *sol = nullptr;
  CHECK(ppl_solve(disk, "plada", &opts, nullptr, 0, &sol) ==
        PPL_ERR_DIVERGED);
  CHECK(sol == nullptr);
  CHECK_FALSE(str(ppl_last_error()).empty());

  ppl_problem_destroy(disk);
}

TEST_CASE("run a config end to end with directory and seed overrides") {
  const fs::path dir = scratch_dir("run-config");
  const fs::path out = dir / "artifacts";
  const fs::path decoy = dir / "never-used";
  const fs::path cfg = write_file(dir, "run.cfg",
                                  "problem = disk\n"
                                  "method = ppala\n"
                                  "q = 0.7\n"
                                  "max_iters = 5000\n"
                                  "output_dir = " + decoy.string() + "\n");

  char *summary_json = nullptr;
  int32_t converged = 0;
  REQUIRE(ppl_run_config(cfg.string().c_str(), out.string().c_str(), 42,
                         &summary_json, &converged) == PPL_OK);
  REQUIRE(summary_json != nullptr);
  CHECK(converged == 1);

  const json summary = json::parse(summary_json);
  ppl_string_free(summary_json);
  CHECK(summary.at("converged").get<bool>());
  CHECK(summary.at("stop_reason").get<std::string>() == "converged");
  CHECK(summary.at("config").at("method").get<std::string>() == "ppala");
  CHECK(summary.at("config").at("seed").get<uint64_t>() == 42);

  // The out_dir argument replaces the configured output directory.
  CHECK(fs::exists(out / "summary.json"));
  CHECK(fs::exists(out / "trace.csv"));
  CHECK_FALSE(fs::exists(decoy));

  // Rate diagnostics from the trace the run just wrote.
  char *rate_json = nullptr;
  REQUIRE(ppl_rate_from_csv((out / "trace.csv").string().c_str(), 0,
                            &rate_json) == PPL_OK);
  REQUIRE(rate_json != nullptr);
  const json rate = json::parse(rate_json);
  ppl_string_free(rate_json);
  CHECK(rate.contains("T"));
  CHECK_FALSE(rate.at("insufficient").get<bool>());

  // A window larger than the trace is reported, not an error.
  REQUIRE(ppl_rate_from_csv((out / "trace.csv").string().c_str(), 1000000000,
                            &rate_json) == PPL_OK);
  const json starved = json::parse(rate_json);
  ppl_string_free(rate_json);
  CHECK(starved.at("insufficient").get<bool>());

  CHECK(ppl_rate_from_csv((dir / "missing.csv").string().c_str(), 0,
                          &rate_json) == PPL_ERR_IO);
  CHECK(ppl_rate_from_csv(nullptr, 0, &rate_json) == PPL_ERR_ARGUMENT);
  CHECK(ppl_rate_from_csv((out / "trace.csv").string().c_str(), -1,
                          &rate_json) == PPL_ERR_ARGUMENT);

  // Null result pointers are allowed: the run still executes.
  const fs::path out2 = dir / "artifacts2";
  REQUIRE(ppl_run_config(cfg.string().c_str(), out2.string().c_str(), -1,
                         nullptr, nullptr) == PPL_OK);
  CHECK(fs::exists(out2 / "summary.json"));

  CHECK(ppl_run_config(nullptr, nullptr, -1, nullptr, nullptr) ==
        PPL_ERR_ARGUMENT);
  CHECK(ppl_run_config((dir / "absent.cfg").string().c_str(), nullptr, -1,
                       nullptr, nullptr) == PPL_ERR_IO);
}

TEST_CASE("diverged run still returns its summary") {
  const fs::path dir = scratch_dir("run-diverged");
  const fs::path out = dir / "artifacts";
  const fs::path cfg = write_file(dir, "diverge.cfg",
                                  "problem = disk\n"
                                  "method = plada\n"
                                  "tau = 1e308\n"
                                  "max_iters = 50\n"
                                  "output_dir = " + out.string() + "\n");

  char *summary_json = nullptr;
  int32_t converged = 1;
  CHECK(ppl_run_config(cfg.string().c_str(), nullptr, -1, &summary_json,
                       &converged) == PPL_ERR_DIVERGED);
  REQUIRE(summary_json != nullptr);
  CHECK(converged == 0);

  const json summary = json::parse(summary_json);
  ppl_string_free(summary_json);
  CHECK(summary.at("stop_reason").get<std::string>() == "diverged");
  CHECK(summary.contains("failure"));
  CHECK(summary.contains("failure_iteration"));
  CHECK(str(ppl_last_error()).find("diverged at iteration") !=
        std::string::npos);
}

TEST_CASE("invariant checks and constant estimation via config") {
  const fs::path dir = scratch_dir("check-config");
  const fs::path cfg = write_file(dir, "check.cfg",
                                  "problem = disk\n"
                                  "method = plada\n"
                                  "max_iters = 1200\n"
                                  "early_stop = false\n");

  char *report_json = nullptr;
  int32_t pass = 0;
  REQUIRE(ppl_check_config(cfg.string().c_str(), &report_json, &pass) ==
          PPL_OK);
  REQUIRE(report_json != nullptr);
  CHECK(pass == 1);
  const json report = json::parse(report_json);
  ppl_string_free(report_json);
  CHECK(report.at("pass").get<bool>());
  CHECK(report.at("iterations").get<uint64_t>() == 1200);

  // Null outputs are accepted; the checks still run.
  REQUIRE(ppl_check_config(cfg.string().c_str(), nullptr, nullptr) == PPL_OK);

  const fs::path pen = write_file(dir, "penalty.cfg",
                                  "problem = disk\n"
                                  "method = penalty\n");
  CHECK(ppl_check_config(pen.string().c_str(), &report_json, &pass) ==
        PPL_ERR_CONFIG);
  CHECK(ppl_check_config(nullptr, &report_json, &pass) == PPL_ERR_ARGUMENT);

  char *estimate_json = nullptr;
  REQUIRE(ppl_estimate_from_config(cfg.string().c_str(), 500, 7,
                                   &estimate_json) == PPL_OK);
  REQUIRE(estimate_json != nullptr);
  const json estimate = json::parse(estimate_json);
  ppl_string_free(estimate_json);
  CHECK(estimate.contains("sampled"));
  CHECK(estimate.contains("declared"));

  CHECK(ppl_estimate_from_config(cfg.string().c_str(), -5, 7,
                                 &estimate_json) == PPL_ERR_ARGUMENT);
  CHECK(ppl_estimate_from_config(nullptr, 0, 7, &estimate_json) ==
        PPL_ERR_ARGUMENT);
}

TEST_CASE("last error is cleared by the next successful call") {
  CHECK(ppl_problem_create_disk(nullptr) == PPL_ERR_ARGUMENT);
  CHECK_FALSE(str(ppl_last_error()).empty());

  ppl_problem *disk = nullptr;
  REQUIRE(ppl_problem_create_disk(&disk) == PPL_OK);
  CHECK(str(ppl_last_error()).empty());
  ppl_problem_destroy(disk);
}
