// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ppl/types.hpp"

namespace ppl {

/// One per-iteration diagnostics row. Row iter = j (j >= 1) reports the
/// outputs of step j-1: residuals at x_j paired with the certificate nu_{j-1},
/// dual_gap = ||lambda_j - mu_j||, and the schedule value delta_{j-1} that
/// drove the step. The initial row iter = 0 reports residuals at x_0 with a
/// zero certificate and the schedule value delta_0.
struct TraceRecord {
  std::uint64_t iter = 0;
  double elapsed_sec = 0.0;
  double objective = 0.0;        ///< f(x) + r(x).
  double feasibility = 0.0;      ///< ||max(0, g(x))||_2.
  double stationarity = 0.0;     ///< Prox-gradient residual norm.
  double complementarity = 0.0;  ///< sum_j |nu_j * g_j(x)|.
  double dual_gap = 0.0;         ///< ||lambda - mu||_2.
  double lambda_norm = 0.0;
  double mu_norm = 0.0;
  double delta_k = 0.0;          ///< Dual-step schedule value.
};

/// Per-row callback fed by the solver run loops.
using TraceSink = std::function<void(const TraceRecord &)>;

/// Exact CSV header emitted and required by the trace readers/writers.
inline constexpr char kTraceCsvHeader[] =
    "iter,elapsed_sec,objective,feasibility,stationarity,complementarity,"
    "dual_gap,lambda_norm,mu_norm,delta_k";

/// Format one row; doubles use shortest round-trip formatting, so identical
/// values always produce identical bytes.
std::string format_trace_row(const TraceRecord &row);

/// Write header + rows to `path`. Errors: IoError if the file cannot be
/// created.
void write_trace_csv(const std::string &path,
                     const std::vector<TraceRecord> &rows);

/// Parse a trace CSV produced by write_trace_csv. Errors: IoError if
/// unreadable, ParseError (with line number) on a malformed header or row.
std::vector<TraceRecord> read_trace_csv(const std::string &path);

}  // namespace ppl
