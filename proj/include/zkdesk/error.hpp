#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zkdesk {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arithmetic between scalars of different modes or moduli.
class ModeMismatch : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Interpolation or vanishing-polynomial nodes that are not pairwise distinct.
class DuplicateNode : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Malformed input files (JSON schema violations, bad scalar strings).
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace zkdesk
