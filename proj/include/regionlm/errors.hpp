#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace regionlm {

/// Base class for all user-facing errors. Anything derived from this maps to
/// exit code 1 at the CLI; everything else is treated as an internal failure.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed corpus input. Carries the 1-based line/column reported by the
/// XML parser.
class XmlParseError : public Error {
  public:
    XmlParseError(const std::string& msg, uint64_t line, uint64_t column)
        : Error(msg + " at line " + std::to_string(line) + ", column "
                + std::to_string(column)),
          line_(line),
          column_(column) {}

    uint64_t line() const { return line_; }
    uint64_t column() const { return column_; }

  private:
    uint64_t line_;
    uint64_t column_;
};

/// Syntax error in the region query language or the NEXI frontend. Position
/// is a 1-based character offset into the query string.
class QuerySyntaxError : public Error {
  public:
    QuerySyntaxError(const std::string& msg, size_t position)
        : Error(msg + " at position " + std::to_string(position)),
          position_(position) {}

    size_t position() const { return position_; }

  private:
    size_t position_;
};

/// Domain-invariant violation in input data (bad region bounds, nonpositive
/// score, bad stored-set name, ...).
class ValidationError : public Error {
  public:
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

/// Evaluation failure, e.g. a query referencing an unregistered stored set.
class EvalError : public Error {
  public:
    explicit EvalError(const std::string& msg) : Error(msg) {}
};

/// File system / serialization problems, including index version mismatches.
class IoError : public Error {
  public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

/// Structural problem in a ranking-specification document. The message names
/// the offending field.
class SpecError : public Error {
  public:
    explicit SpecError(const std::string& msg) : Error(msg) {}
};

}  // namespace regionlm
