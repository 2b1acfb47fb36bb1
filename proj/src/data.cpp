// SPDX-License-Identifier: MIT
#include "ppl/data.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "rng.hpp"

namespace ppl {

namespace {

double parse_number(std::string_view token, std::uint64_t line,
                    const char *what) {
  std::string_view body = token;
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  double value = 0.0;
  const auto res =
      std::from_chars(body.data(), body.data() + body.size(), value);
  if (res.ec != std::errc{} || res.ptr != body.data() + body.size() ||
      !std::isfinite(value))
    throw ParseError(std::string(what) + ": malformed number '" +
                         std::string(token) + "'",
                     line);
  return value;
}

void append_number(std::string &out, double value) {
  std::array<char, 64> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  out.append(buf.data(), res.ptr);
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  while (true) {
    const auto pos = text.find(sep);
    if (pos == std::string_view::npos) {
      parts.push_back(text);
      return parts;
    }
    parts.push_back(text.substr(0, pos));
    text.remove_prefix(pos + 1);
  }
}

struct Entry {
  Index row, col;
  double value;
};

void materialize(Dataset &d, Index rows, Index dim,
                 const std::vector<Entry> &entries) {
  if (dim <= kDenseDimLimit) {
    d.sparse = false;
    d.features = Mat::Zero(rows, dim);
    for (const Entry &e : entries) d.features(e.row, e.col) = e.value;
  } else {
    d.sparse = true;
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(entries.size());
    for (const Entry &e : entries)
      triplets.emplace_back(static_cast<int>(e.row), static_cast<int>(e.col),
                            e.value);
    d.sparse_features.resize(rows, dim);
    d.sparse_features.setFromTriplets(triplets.begin(), triplets.end());
    d.sparse_features.makeCompressed();
  }
}

std::vector<Index> remap_mask(const std::vector<Index> &mask,
                              const std::vector<Index> &new_position,
                              Index begin, Index end) {
  std::vector<Index> out;
  for (Index row : mask) {
    const Index pos = new_position[static_cast<std::size_t>(row)];
    if (pos >= begin && pos < end) out.push_back(pos - begin);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

double Dataset::row_dot(Index i, const Vec &w) const {
  if (!sparse) return features.row(i).dot(w);
  double sum = 0.0;
  for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(
           sparse_features, i);
       it; ++it)
    sum += it.value() * w(it.col());
  return sum;
}

void Dataset::add_row(Index i, double coef, Vec &out) const {
  if (!sparse) {
    out += coef * features.row(i).transpose();
    return;
  }
  for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(
           sparse_features, i);
       it; ++it)
    out(it.col()) += coef * it.value();
}

double Dataset::row_squared_norm(Index i) const {
  if (!sparse) return features.row(i).squaredNorm();
  double sum = 0.0;
  for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(
           sparse_features, i);
       it; ++it)
    sum += it.value() * it.value();
  return sum;
}

Dataset parse_libsvm(std::istream &in) {
  std::vector<Entry> entries;
  std::vector<double> labels;
  Index max_col = 0;
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view view = line;
    // Tolerate tabs and repeated separators.
    std::vector<std::string_view> tokens;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= view.size(); ++i) {
      if (i == view.size() || view[i] == ' ' || view[i] == '\t') {
        if (i > start) tokens.push_back(view.substr(start, i - start));
        start = i + 1;
      }
    }
    if (tokens.empty()) continue;  // blank line

    const double raw_label = parse_number(tokens[0], line_no, "libsvm label");
    labels.push_back(raw_label > 0.0 ? 1.0 : -1.0);
    const Index row = static_cast<Index>(labels.size()) - 1;

    Index previous = 0;
    for (std::size_t t = 1; t < tokens.size(); ++t) {
      const auto colon = tokens[t].find(':');
      if (colon == std::string_view::npos)
        throw ParseError("libsvm: expected index:value, got '" +
                             std::string(tokens[t]) + "'",
                         line_no);
      const std::string_view idx_text = tokens[t].substr(0, colon);
      std::uint64_t idx = 0;
      const auto res = std::from_chars(
          idx_text.data(), idx_text.data() + idx_text.size(), idx);
      if (res.ec != std::errc{} ||
          res.ptr != idx_text.data() + idx_text.size() || idx == 0)
        throw ParseError("libsvm: malformed feature index '" +
                             std::string(idx_text) + "'",
                         line_no);
      const auto col = static_cast<Index>(idx);
      if (col <= previous)
        throw ParseError(
            "libsvm: feature indices must be strictly increasing", line_no);
      previous = col;
      max_col = std::max(max_col, col);
      const double value =
          parse_number(tokens[t].substr(colon + 1), line_no, "libsvm value");
      entries.push_back(Entry{row, col - 1, value});
    }
  }

  Dataset d;
  d.labels = Eigen::Map<const Vec>(labels.data(),
                                   static_cast<Index>(labels.size()));
  materialize(d, static_cast<Index>(labels.size()), max_col, entries);
  return d;
}

Dataset parse_libsvm_text(const std::string &text) {
  std::istringstream in(text);
  return parse_libsvm(in);
}

Dataset load_libsvm(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read data file: " + path);
  return parse_libsvm(in);
}

std::string serialize_libsvm(const Dataset &data) {
  std::string out;
  out.reserve(static_cast<std::size_t>(data.rows()) * 32);
  for (Index i = 0; i < data.rows(); ++i) {
    out += data.labels(i) > 0.0 ? "+1" : "-1";
    auto emit = [&out](Index col, double value) {
      if (value == 0.0) return;
      out.push_back(' ');
      out += std::to_string(static_cast<long long>(col) + 1);
      out.push_back(':');
      append_number(out, value);
    };
    if (data.sparse) {
      for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(
               data.sparse_features, i);
           it; ++it)
        emit(it.col(), it.value());
    } else {
      for (Index j = 0; j < data.features.cols(); ++j)
        emit(j, data.features(i, j));
    }
    out.push_back('\n');
  }
  return out;
}

Dataset parse_csv(std::istream &in, const std::string &label_column,
                  const std::string &positive_label,
                  const std::vector<std::string> &group_columns) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("csv: empty input", 1);
  if (!line.empty() && line.back() == '\r') line.pop_back();

  const std::vector<std::string_view> header = split(line, ',');
  const std::set<std::string> group_set(group_columns.begin(),
                                        group_columns.end());
  Index label_idx = -1;
  std::vector<Index> feature_cols;
  std::vector<std::pair<Index, std::string>> text_cols;
  for (std::size_t i = 0; i < header.size(); ++i) {
    const std::string name(header[i]);
    if (name == label_column) {
      if (label_idx >= 0)
        throw ParseError("csv: duplicate label column '" + name + "'", 1);
      label_idx = static_cast<Index>(i);
    } else if (group_set.count(name)) {
      text_cols.emplace_back(static_cast<Index>(i), name);
    } else {
      feature_cols.push_back(static_cast<Index>(i));
    }
  }
  if (label_idx < 0)
    throw ParseError("csv: label column '" + label_column + "' not found", 1);
  for (const std::string &g : group_columns) {
    bool found = false;
    for (const auto &[idx, name] : text_cols) found |= name == g;
    if (!found)
      throw ParseError("csv: group column '" + g + "' not found", 1);
  }

  Dataset d;
  for (const auto &[idx, name] : text_cols) d.text_columns[name] = {};

  std::vector<Entry> entries;
  std::vector<double> labels;
  std::uint64_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string_view> cells = split(line, ',');
    if (cells.size() != header.size())
      throw ParseError("csv: row has " + std::to_string(cells.size()) +
                           " cells, header has " +
                           std::to_string(header.size()),
                       line_no);
    const Index row = static_cast<Index>(labels.size());
    labels.push_back(
        std::string(cells[static_cast<std::size_t>(label_idx)]) ==
                positive_label
            ? 1.0
            : -1.0);
    for (std::size_t f = 0; f < feature_cols.size(); ++f) {
      const auto cell = cells[static_cast<std::size_t>(feature_cols[f])];
      const double value = parse_number(cell, line_no, "csv feature");
      if (value != 0.0)
        entries.push_back(Entry{row, static_cast<Index>(f), value});
    }
    for (const auto &[idx, name] : text_cols)
      d.text_columns[name].emplace_back(cells[static_cast<std::size_t>(idx)]);
  }

  d.labels = Eigen::Map<const Vec>(labels.data(),
                                   static_cast<Index>(labels.size()));
  materialize(d, static_cast<Index>(labels.size()),
              static_cast<Index>(feature_cols.size()), entries);
  return d;
}

Dataset parse_csv_text(const std::string &text, const std::string &label_column,
                       const std::string &positive_label,
                       const std::vector<std::string> &group_columns) {
  std::istringstream in(text);
  return parse_csv(in, label_column, positive_label, group_columns);
}

Dataset load_csv(const std::string &path, const std::string &label_column,
                 const std::string &positive_label,
                 const std::vector<std::string> &group_columns) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read data file: " + path);
  return parse_csv(in, label_column, positive_label, group_columns);
}

Dataset extract_group_masks(const Dataset &data,
                            const std::vector<GroupSpec> &specs) {
  Dataset out = data;
  for (const GroupSpec &spec : specs) {
    if (spec.name.empty())
      throw ContractError("group spec: name must not be empty");
    std::vector<bool> member(static_cast<std::size_t>(data.rows()), false);
    if (spec.source == GroupSpec::Source::FeatureThreshold) {
      if (spec.feature_index < 0 || spec.feature_index >= data.dim())
        throw ContractError("group spec '" + spec.name +
                            "': feature index out of range");
      for (Index i = 0; i < data.rows(); ++i) {
        const double v =
            data.sparse
                ? data.sparse_features.coeff(i, spec.feature_index)
                : data.features(i, spec.feature_index);
        member[static_cast<std::size_t>(i)] = v >= spec.threshold;
      }
    } else {
      const auto it = data.text_columns.find(spec.column);
      if (it == data.text_columns.end())
        throw ContractError("group spec '" + spec.name +
                            "': text column '" + spec.column + "' not found");
      for (Index i = 0; i < data.rows(); ++i) {
        const std::string &cell = it->second[static_cast<std::size_t>(i)];
        for (const std::string &v : spec.values)
          if (cell == v) {
            member[static_cast<std::size_t>(i)] = true;
            break;
          }
      }
    }

    std::map<std::string, std::vector<Index>> derived;
    for (Index i = 0; i < data.rows(); ++i) {
      const bool g = member[static_cast<std::size_t>(i)];
      const bool pos = data.labels(i) > 0.0;
      derived[g ? spec.name : spec.name + "_c"].push_back(i);
      derived[g ? (pos ? spec.name + "_pos" : spec.name + "_neg")
                : (pos ? spec.name + "_c_pos" : spec.name + "_c_neg")]
          .push_back(i);
    }
    for (const char *suffix : {"", "_c", "_pos", "_neg", "_c_pos", "_c_neg"}) {
      const std::string name = spec.name + suffix;
      const auto it = derived.find(name);
      if (it == derived.end() || it->second.empty())
        throw ContractError("group mask '" + name + "' is empty");
      out.masks[name] = it->second;
    }
  }
  return out;
}

void normalize_min_max(Dataset &data) {
  if (data.sparse)
    throw ContractError(
        "normalize_min_max supports dense feature storage only");
  for (Index j = 0; j < data.features.cols(); ++j) {
    const double lo = data.features.col(j).minCoeff();
    const double hi = data.features.col(j).maxCoeff();
    if (hi > lo)
      data.features.col(j) =
          (data.features.col(j).array() - lo) / (hi - lo);
    else
      data.features.col(j).setZero();
  }
}

std::pair<Dataset, Dataset> shuffle_split(const Dataset &data, double fraction,
                                          std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0))
    throw ContractError("shuffle_split: fraction must lie in (0, 1)");
  const Index rows = data.rows();
  if (rows < 2) throw ContractError("shuffle_split: need at least 2 rows");

  std::vector<Index> order(static_cast<std::size_t>(rows));
  for (Index i = 0; i < rows; ++i) order[static_cast<std::size_t>(i)] = i;
  detail::Rng rng(seed);
  for (Index i = rows - 1; i > 0; --i) {
    const auto j = static_cast<Index>(
        rng.bounded(static_cast<std::uint64_t>(i) + 1));
    std::swap(order[static_cast<std::size_t>(i)],
              order[static_cast<std::size_t>(j)]);
  }
  Index head = static_cast<Index>(
      std::llround(fraction * static_cast<double>(rows)));
  head = std::clamp<Index>(head, 1, rows - 1);

  std::vector<Index> new_position(static_cast<std::size_t>(rows));
  for (Index pos = 0; pos < rows; ++pos)
    new_position[static_cast<std::size_t>(order[static_cast<std::size_t>(pos)])] =
        pos;

  auto take = [&](Index begin, Index end) {
    Dataset part;
    const Index count = end - begin;
    part.labels.resize(count);
    if (data.sparse) {
      part.sparse = true;
      std::vector<Eigen::Triplet<double>> triplets;
      for (Index pos = begin; pos < end; ++pos) {
        const Index src = order[static_cast<std::size_t>(pos)];
        for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(
                 data.sparse_features, src);
             it; ++it)
          triplets.emplace_back(static_cast<int>(pos - begin),
                                static_cast<int>(it.col()), it.value());
      }
      part.sparse_features.resize(count, data.dim());
      part.sparse_features.setFromTriplets(triplets.begin(), triplets.end());
      part.sparse_features.makeCompressed();
    } else {
      part.features.resize(count, data.dim());
      for (Index pos = begin; pos < end; ++pos)
        part.features.row(pos - begin) =
            data.features.row(order[static_cast<std::size_t>(pos)]);
    }
    for (Index pos = begin; pos < end; ++pos)
      part.labels(pos - begin) =
          data.labels(order[static_cast<std::size_t>(pos)]);
    for (const auto &[name, column] : data.text_columns) {
      auto &dst = part.text_columns[name];
      dst.reserve(static_cast<std::size_t>(count));
      for (Index pos = begin; pos < end; ++pos)
        dst.push_back(
            column[static_cast<std::size_t>(order[static_cast<std::size_t>(pos)])]);
    }
    for (const auto &[name, mask] : data.masks) {
      auto remapped = remap_mask(mask, new_position, begin, end);
      if (!remapped.empty()) part.masks[name] = std::move(remapped);
    }
    return part;
  };
  return {take(0, head), take(head, rows)};
}

}  // namespace ppl
