#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sae {

// Base for every error raised by the library. The CLI maps subclasses onto
// exit codes, so throw the most specific type available.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand shapes disagree (matrix product, encoder input, model input, ...).
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Invalid hyperparameters, unknown preset names, malformed config files.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Input data violates the cohort schema or an operation precondition on data
// (empty batch, too few cases for k folds, ...).
class DataError : public Error {
 public:
  using Error::Error;
};

// A cohort CSV row or column could not be accepted. `row` is 1-based and
// counts the header as row 1; 0 means the error is not tied to a row.
class ParseError : public DataError {
 public:
  ParseError(std::size_t row, std::string column, const std::string& reason);

  std::size_t row() const noexcept { return row_; }
  const std::string& column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::string column_;
};

// Serialized model or report has the wrong version, is truncated, or does not
// match the expected schema.
class FormatError : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace sae
