// SPDX-License-Identifier: MIT
#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ppl {

using Vec   = Eigen::VectorXd;
using Mat   = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Violation of a documented call contract (bad dimension, parameter out of
/// range, missing oracle, iterate outside the regularizer domain, ...).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A user-supplied oracle returned a non-finite value or gradient.
class OracleError : public std::runtime_error {
 public:
  explicit OracleError(const std::string &what) : std::runtime_error(what) {}
};

/// Solver iterates became non-finite; carries the iteration index.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string &what, std::uint64_t iteration)
      : std::runtime_error(what), iteration_(iteration) {}
  std::uint64_t iteration() const { return iteration_; }

 private:
  std::uint64_t iteration_;
};

/// Malformed configuration (unknown key, bad value, incompatible choices).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed data file; carries the 1-based line number when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string &what, std::uint64_t line = 0)
      : std::runtime_error(what), line_(line) {}
  std::uint64_t line() const { return line_; }

 private:
  std::uint64_t line_;
};

/// Filesystem failure (unreadable input, unwritable output directory).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ppl
