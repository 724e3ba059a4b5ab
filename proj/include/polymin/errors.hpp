#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace polymin {

enum class ErrorCode {
  InvalidParameter,
  DegenerateSegment,
  DegenerateInput,
  IndexOutOfRange,
  NoSolution,
  CorruptTable,
  ParseError,
};

/// Base of every exception thrown by the library. The C API maps `code()`
/// onto its status enum.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InvalidParameter : public Error {
 public:
  explicit InvalidParameter(const std::string& what)
      : Error(ErrorCode::InvalidParameter, what) {}
};

class DegenerateSegment : public Error {
 public:
  explicit DegenerateSegment(const std::string& what = "segment endpoints coincide")
      : Error(ErrorCode::DegenerateSegment, what) {}
};

class DegenerateInput : public Error {
 public:
  explicit DegenerateInput(const std::string& what)
      : Error(ErrorCode::DegenerateInput, what) {}
};

class IndexOutOfRange : public Error {
 public:
  explicit IndexOutOfRange(const std::string& what)
      : Error(ErrorCode::IndexOutOfRange, what) {}
};

class CorruptTable : public Error {
 public:
  explicit CorruptTable(const std::string& what)
      : Error(ErrorCode::CorruptTable, what) {}
};

/// Raised when no compressed polyline satisfies the constraints. `vertex()`
/// names the first source vertex that could not be reached, when known.
class NoSolution : public Error {
 public:
  explicit NoSolution(const std::string& what,
                      std::optional<std::size_t> vertex = std::nullopt)
      : Error(ErrorCode::NoSolution, what), vertex_(vertex) {}

  std::optional<std::size_t> vertex() const noexcept { return vertex_; }

 private:
  std::optional<std::size_t> vertex_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " +
                                         std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace polymin
