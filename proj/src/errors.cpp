#include "fdode/errors.hpp"

namespace fdode {

const char* to_string(ParseErrorKind kind) noexcept {
  switch (kind) {
    case ParseErrorKind::syntax:
      return "syntax error";
    case ParseErrorKind::dimension_mismatch:
      return "dimension mismatch";
    case ParseErrorKind::unknown_function:
      return "unknown function";
    case ParseErrorKind::duplicate_term:
      return "duplicate multi-index";
    case ParseErrorKind::missing_key:
      return "missing key";
    case ParseErrorKind::invalid_value:
      return "invalid value";
  }
  return "error";
}

namespace {

std::string format_parse_error(ParseErrorKind kind, const std::string& message, std::size_t line,
                               std::size_t column) {
  std::string out;
  if (line > 0) {
    out += std::to_string(line) + ":" + std::to_string(column) + ": ";
  }
  out += to_string(kind);
  out += ": ";
  out += message;
  return out;
}

}  // namespace

ParseError::ParseError(ParseErrorKind kind, const std::string& message, std::size_t line,
                       std::size_t column)
    : std::runtime_error(format_parse_error(kind, message, line, column)),
      kind_(kind),
      message_(message),
      line_(line),
      column_(column) {}

}  // namespace fdode
