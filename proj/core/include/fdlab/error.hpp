#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fdlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unknown attribute, duplicate attribute name, or arity mismatch.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// An operation was applied to a table model it does not support.
class ModelError : public Error {
 public:
  using Error::Error;
};

/// A search or enumeration would exceed the configured valuation cap.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// Input that violates an operation's documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Caller broke a usage contract, e.g. removing a tuple that was never inserted.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Text input could not be parsed. Carries a 1-based location.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : ParseError({}, line, column, message) {}
  /// `source` names the input, e.g. a file path, and leads the message.
  ParseError(const std::string& source, std::size_t line, std::size_t column,
             const std::string& message)
      : Error((source.empty() ? "" : source + ": ") + "line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + message),
        line_(line),
        column_(column),
        message_(message) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  /// The message without location.
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

}  // namespace fdlab
