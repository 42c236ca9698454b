#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace fdode {

/// Expression in the single variable t: literals, t, + - * /, unary -,
/// sin, cos, exp and pow(base, integer). Immutable; copies share the tree.
class TimeExpr {
 public:
  enum class Op { literal, var, add, sub, mul, div, neg, sin, cos, exp, pow };

  /// The literal 0.
  TimeExpr();

  static TimeExpr constant(double value);
  static TimeExpr variable();
  static TimeExpr binary(Op op, TimeExpr lhs, TimeExpr rhs);
  static TimeExpr unary(Op op, TimeExpr arg);
  static TimeExpr power(TimeExpr base, int exponent);

  double eval(double t) const;
  bool depends_on_t() const;
  bool is_zero_literal() const;

  /// Text that parse_time_expr maps back to a structurally equal tree.
  std::string to_string() const;

  /// Structural equality (literals compared bitwise).
  bool operator==(const TimeExpr& other) const;

  Op op() const;

  /// Tree node; defined in expr.cpp.
  struct Node;

 private:
  explicit TimeExpr(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

TimeExpr operator+(const TimeExpr& a, const TimeExpr& b);
TimeExpr operator-(const TimeExpr& a, const TimeExpr& b);
TimeExpr operator*(const TimeExpr& a, const TimeExpr& b);
TimeExpr operator-(const TimeExpr& a);

/// Throws ParseError (syntax or unknown_function) with a 1-based column.
TimeExpr parse_time_expr(std::string_view text);

/// Shortest text that round-trips the double exactly ("1", "0.5", "-2.5e-07").
std::string format_real(double value);

}  // namespace fdode
