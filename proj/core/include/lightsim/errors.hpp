#pragma once

#include <stdexcept>
#include <string>

namespace lightsim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration: bad timestep, inconsistent series, schema violations.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A value outside the domain of an operation (negative energy, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Structural problem in an input file, e.g. a missing EPW LOCATION header.
class FormatError : public Error {
 public:
  FormatError(const std::string& message, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Wrong number of records in a file that has a fixed length contract.
class LengthError : public Error {
 public:
  LengthError(std::size_t expected, std::size_t actual)
      : Error("expected " + std::to_string(expected) + " records, found " +
              std::to_string(actual)),
        expected_(expected),
        actual_(actual) {}

  std::size_t expected() const noexcept { return expected_; }
  std::size_t actual() const noexcept { return actual_; }

 private:
  std::size_t expected_;
  std::size_t actual_;
};

/// Non-numeric or out-of-range field. Row is the 1-based file line, column
/// the 1-based field index.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t row, std::size_t column)
      : Error("row " + std::to_string(row) + ", column " + std::to_string(column) + ": " +
              message),
        row_(row),
        column_(column) {}

  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

}  // namespace lightsim
