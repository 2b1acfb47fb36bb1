// SPDX-License-Identifier: MIT
#pragma once

#include <Eigen/SparseCore>

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "ppl/types.hpp"

namespace ppl {

/// Feature matrices are materialized densely up to this column count;
/// wider data stays in sparse row storage.
inline constexpr Index kDenseDimLimit = 4096;

/// A labeled dataset with optional text columns (for group extraction) and
/// named row masks. Labels are +1/-1.
struct Dataset {
  Mat features;  ///< Dense storage (rows x dim) when dim <= kDenseDimLimit.
  Eigen::SparseMatrix<double, Eigen::RowMajor> sparse_features;
  bool sparse = false;
  Vec labels;
  std::map<std::string, std::vector<std::string>> text_columns;
  std::map<std::string, std::vector<Index>> masks;  ///< Sorted row indices.

  Index rows() const { return labels.size(); }
  Index dim() const {
    return sparse ? sparse_features.cols() : features.cols();
  }
  /// <row i, w>.
  double row_dot(Index i, const Vec &w) const;
  /// out += coef * row i.
  void add_row(Index i, double coef, Vec &out) const;
  double row_squared_norm(Index i) const;
};

/// How to derive a binary group mask from a dataset.
struct GroupSpec {
  std::string name;
  enum class Source { FeatureThreshold, TextColumn } source =
      Source::FeatureThreshold;
  Index feature_index = 0;   ///< FeatureThreshold: column index.
  double threshold = 0.5;    ///< In-group when feature >= threshold.
  std::string column;        ///< TextColumn: text column name.
  std::vector<std::string> values;  ///< In-group when cell matches any value.
};

/// Parse sparse "label idx:value ..." lines (1-based, strictly ascending
/// indices). Labels: any positive number maps to +1, the rest to -1.
/// Errors: ParseError with the offending line number.
Dataset parse_libsvm(std::istream &in);
Dataset parse_libsvm_text(const std::string &text);
Dataset load_libsvm(const std::string &path);  ///< IoError if unreadable.

/// Canonical sparse serialization: "+1"/"-1" label, 1-based ascending
/// "idx:value" pairs, exact zeros skipped, shortest round-trip number
/// formatting, "\n" line ends. parse(serialize(d)) reproduces d bit-exactly,
/// and serialize(parse(text)) reproduces canonical text byte-for-byte.
std::string serialize_libsvm(const Dataset &data);

/// Parse a headered CSV. `label_column` names the label; cells equal to
/// `positive_label` map to +1, others to -1. Columns named in
/// `group_columns` are retained as text columns; every remaining column must
/// be numeric. Errors: ParseError with line numbers (unknown label column,
/// ragged row, non-numeric feature cell).
Dataset parse_csv(std::istream &in, const std::string &label_column,
                  const std::string &positive_label,
                  const std::vector<std::string> &group_columns = {});
Dataset parse_csv_text(const std::string &text, const std::string &label_column,
                       const std::string &positive_label,
                       const std::vector<std::string> &group_columns = {});
Dataset load_csv(const std::string &path, const std::string &label_column,
                 const std::string &positive_label,
                 const std::vector<std::string> &group_columns = {});

/// Return a copy of `data` with six masks per spec: name, name_c
/// (complement), and the four label-conditioned intersections name_pos,
/// name_neg, name_c_pos, name_c_neg. Errors: ContractError naming any mask
/// that comes out empty, or on a missing column / out-of-range index.
Dataset extract_group_masks(const Dataset &data,
                            const std::vector<GroupSpec> &specs);

/// Scale every feature column to [0, 1] in place (constant columns map to 0).
void normalize_min_max(Dataset &data);

/// Seeded row shuffle followed by a head/tail split at `fraction` (first
/// part receives round(fraction * rows) rows). Masks and text columns are
/// remapped. Pre: 0 < fraction < 1.
std::pair<Dataset, Dataset> shuffle_split(const Dataset &data, double fraction,
                                          std::uint64_t seed);

}  // namespace ppl
