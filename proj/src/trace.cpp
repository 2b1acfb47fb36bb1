// SPDX-License-Identifier: MIT
#include "ppl/trace.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>
#include <system_error>

namespace ppl {

namespace {

void append_double(std::string &out, double value) {
  std::array<char, 64> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  out.append(buf.data(), res.ptr);
}

double parse_double_field(std::string_view field, std::uint64_t line) {
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  const auto res =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size())
    throw ParseError("trace csv: malformed numeric field '" +
                         std::string(field) + "'",
                     line);
  return value;
}

}  // namespace

std::string format_trace_row(const TraceRecord &row) {
  std::string out;
  out.reserve(160);
  out += std::to_string(row.iter);
  const double columns[] = {row.elapsed_sec, row.objective,    row.feasibility,
                            row.stationarity, row.complementarity,
                            row.dual_gap,     row.lambda_norm, row.mu_norm,
                            row.delta_k};
  for (double v : columns) {
    out.push_back(',');
    append_double(out, v);
  }
  return out;
}

void write_trace_csv(const std::string &path,
                     const std::vector<TraceRecord> &rows) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create trace file: " + path);
  out << kTraceCsvHeader << '\n';
  for (const TraceRecord &row : rows) out << format_trace_row(row) << '\n';
  if (!out) throw IoError("failed while writing trace file: " + path);
}

std::vector<TraceRecord> read_trace_csv(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read trace file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("trace csv: empty file", 1);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTraceCsvHeader)
    throw ParseError("trace csv: unexpected header '" + line + "'", 1);

  std::vector<TraceRecord> rows;
  std::uint64_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::array<std::string_view, 10> fields;
    std::string_view rest = line;
    for (int i = 0; i < 10; ++i) {
      const auto comma = rest.find(',');
      if (i < 9) {
        if (comma == std::string_view::npos)
          throw ParseError("trace csv: expected 10 fields", line_no);
        fields[i] = rest.substr(0, comma);
        rest.remove_prefix(comma + 1);
      } else {
        if (comma != std::string_view::npos)
          throw ParseError("trace csv: expected 10 fields", line_no);
        fields[i] = rest;
      }
    }
    TraceRecord row;
    std::uint64_t iter = 0;
    const auto res = std::from_chars(
        fields[0].data(), fields[0].data() + fields[0].size(), iter);
    if (res.ec != std::errc{} || res.ptr != fields[0].data() + fields[0].size())
      throw ParseError("trace csv: malformed iteration index", line_no);
    row.iter = iter;
    row.elapsed_sec = parse_double_field(fields[1], line_no);
    row.objective = parse_double_field(fields[2], line_no);
    row.feasibility = parse_double_field(fields[3], line_no);
    row.stationarity = parse_double_field(fields[4], line_no);
    row.complementarity = parse_double_field(fields[5], line_no);
    row.dual_gap = parse_double_field(fields[6], line_no);
    row.lambda_norm = parse_double_field(fields[7], line_no);
    row.mu_norm = parse_double_field(fields[8], line_no);
    row.delta_k = parse_double_field(fields[9], line_no);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace ppl
