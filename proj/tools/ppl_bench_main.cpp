// SPDX-License-Identifier: MIT
//
// Benchmark and diagnostics front-end. Talks to the solver library purely
// through its C interface.
#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <string>

#include "ppl/ppl.h"

namespace {

int report_failure(const char *verb, ppl_status status) {
  std::fprintf(stderr, "ppl-bench: %s failed: %s: %s\n", verb,
               ppl_status_message(status), ppl_last_error());
  return 1;
}

void print_owned_json(char *json) {
  if (json != nullptr) {
    std::printf("%s\n", json);
    ppl_string_free(json);
  }
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Benchmark driver for the ppl constrained-optimization library"};
  app.set_version_flag("--version", std::string(ppl_version()));
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string trace_path;
  std::int64_t seed_override = -1;
  std::uint64_t estimate_seed = 0;
  std::int64_t window = 0;
  std::int64_t samples = 0;

  CLI::App *solve =
      app.add_subcommand("solve", "Run a configured benchmark problem");
  solve->add_option("--config", config_path, "configuration file")
      ->required();
  solve->add_option("--out", out_dir,
                    "output directory (overrides the configured one)");
  solve->add_option("--seed", seed_override,
                    "seed override (negative keeps the configured seed)");

  CLI::App *check = app.add_subcommand(
      "check", "Re-run a configuration with per-iteration invariant checks");
  check->add_option("--config", config_path, "configuration file")
      ->required();

  CLI::App *rate = app.add_subcommand(
      "rate", "Summarize running-average decay for an existing trace.csv");
  rate->add_option("--trace", trace_path, "trace.csv produced by solve")
      ->required();
  rate->add_option("--T", window,
                   "window length (0 picks the largest usable window)")
      ->check(CLI::NonNegativeNumber);

  CLI::App *estimate = app.add_subcommand(
      "estimate", "Sample smoothness constants for a configured problem");
  estimate->add_option("--config", config_path, "configuration file")
      ->required();
  estimate->add_option("--samples", samples,
                       "number of sampled points (0 means 10000)")
      ->check(CLI::NonNegativeNumber);
  estimate->add_option("--seed", estimate_seed, "sampling seed");

  CLI11_PARSE(app, argc, argv);

  if (solve->parsed()) {
    char *summary = nullptr;
    int32_t converged = 0;
    const ppl_status status =
        ppl_run_config(config_path.c_str(),
                       out_dir.empty() ? nullptr : out_dir.c_str(),
                       seed_override, &summary, &converged);
    // A diverged run still writes its summary; print it before failing.
    print_owned_json(summary);
    if (status != PPL_OK) return report_failure("solve", status);
    return 0;
  }

  if (check->parsed()) {
    char *report = nullptr;
    int32_t pass = 0;
    const ppl_status status =
        ppl_check_config(config_path.c_str(), &report, &pass);
    if (status != PPL_OK) return report_failure("check", status);
    print_owned_json(report);
    return pass != 0 ? 0 : 2;
  }

  if (rate->parsed()) {
    char *report = nullptr;
    const ppl_status status =
        ppl_rate_from_csv(trace_path.c_str(), window, &report);
    if (status != PPL_OK) return report_failure("rate", status);
    print_owned_json(report);
    return 0;
  }

  char *report = nullptr;
  const ppl_status status = ppl_estimate_from_config(
      config_path.c_str(), samples, estimate_seed, &report);
  if (status != PPL_OK) return report_failure("estimate", status);
  print_owned_json(report);
  return 0;
}
