#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fdode {

/// Bad input to an operation: wrong dimensions, non-finite values, empty ranges.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Query outside the domain of a trajectory or grid.
class OutOfRange : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Integrator blow-up, step-size underflow or eigen-solver failure.
class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(const std::string& module, const std::string& what)
      : std::runtime_error(module + ": " + what), module_(module) {}

  const std::string& module() const noexcept { return module_; }

 private:
  std::string module_;
};

/// A convergence hypothesis does not hold for the given inputs.
class HypothesisViolated : public std::runtime_error {
 public:
  HypothesisViolated(const std::string& what, double deficit)
      : std::runtime_error(what), deficit_(deficit) {}

  double deficit() const noexcept { return deficit_; }

 private:
  double deficit_;
};

/// Requested operation is outside what an implementation supports.
class Unsupported : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class ParseErrorKind {
  syntax,
  dimension_mismatch,
  unknown_function,
  duplicate_term,
  missing_key,
  invalid_value,
};

const char* to_string(ParseErrorKind kind) noexcept;

/// Problem-file or expression error. Line and column are 1-based; 0 means unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, const std::string& message, std::size_t line = 0,
             std::size_t column = 0);

  ParseErrorKind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

 private:
  ParseErrorKind kind_;
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace fdode
