#include "fdode/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <vector>

#include "fdode/errors.hpp"

namespace fdode {

struct TimeExpr::Node {
  Op op = Op::literal;
  double value = 0.0;
  int exponent = 0;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
  bool uses_t = false;
};

TimeExpr::TimeExpr() : TimeExpr(std::make_shared<const Node>()) {}

TimeExpr::TimeExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

TimeExpr TimeExpr::constant(double value) {
  auto n = std::make_shared<Node>();
  n->op = Op::literal;
  n->value = value;
  return TimeExpr(std::move(n));
}

TimeExpr TimeExpr::variable() {
  auto n = std::make_shared<Node>();
  n->op = Op::var;
  n->uses_t = true;
  return TimeExpr(std::move(n));
}

TimeExpr TimeExpr::binary(Op op, TimeExpr lhs, TimeExpr rhs) {
  if (op != Op::add && op != Op::sub && op != Op::mul && op != Op::div) {
    throw InvalidArgument("TimeExpr::binary: not a binary operator");
  }
  auto n = std::make_shared<Node>();
  n->op = op;
  n->uses_t = lhs.node_->uses_t || rhs.node_->uses_t;
  n->lhs = std::move(lhs.node_);
  n->rhs = std::move(rhs.node_);
  return TimeExpr(std::move(n));
}

TimeExpr TimeExpr::unary(Op op, TimeExpr arg) {
  if (op != Op::neg && op != Op::sin && op != Op::cos && op != Op::exp) {
    throw InvalidArgument("TimeExpr::unary: not a unary operator");
  }
  auto n = std::make_shared<Node>();
  n->op = op;
  n->uses_t = arg.node_->uses_t;
  n->lhs = std::move(arg.node_);
  return TimeExpr(std::move(n));
}

TimeExpr TimeExpr::power(TimeExpr base, int exponent) {
  auto n = std::make_shared<Node>();
  n->op = Op::pow;
  n->exponent = exponent;
  n->uses_t = base.node_->uses_t;
  n->lhs = std::move(base.node_);
  return TimeExpr(std::move(n));
}

namespace {

double eval_node(const TimeExpr::Node& n, double t) {
  using Op = TimeExpr::Op;
  switch (n.op) {
    case Op::literal:
      return n.value;
    case Op::var:
      return t;
    case Op::add:
      return eval_node(*n.lhs, t) + eval_node(*n.rhs, t);
    case Op::sub:
      return eval_node(*n.lhs, t) - eval_node(*n.rhs, t);
    case Op::mul:
      return eval_node(*n.lhs, t) * eval_node(*n.rhs, t);
    case Op::div:
      return eval_node(*n.lhs, t) / eval_node(*n.rhs, t);
    case Op::neg:
      return -eval_node(*n.lhs, t);
    case Op::sin:
      return std::sin(eval_node(*n.lhs, t));
    case Op::cos:
      return std::cos(eval_node(*n.lhs, t));
    case Op::exp:
      return std::exp(eval_node(*n.lhs, t));
    case Op::pow: {
      const double base = eval_node(*n.lhs, t);
      double result = 1.0;
      const int e = n.exponent < 0 ? -n.exponent : n.exponent;
      for (int i = 0; i < e; ++i) {
        result *= base;
      }
      return n.exponent < 0 ? 1.0 / result : result;
    }
  }
  return 0.0;
}

bool equal_nodes(const TimeExpr::Node* a, const TimeExpr::Node* b) {
  if (a == b) {
    return true;
  }
  if (a == nullptr || b == nullptr || a->op != b->op) {
    return false;
  }
  if (a->op == TimeExpr::Op::literal) {
    return std::memcmp(&a->value, &b->value, sizeof(double)) == 0;
  }
  if (a->op == TimeExpr::Op::pow && a->exponent != b->exponent) {
    return false;
  }
  return equal_nodes(a->lhs.get(), b->lhs.get()) && equal_nodes(a->rhs.get(), b->rhs.get());
}

void print_node(const TimeExpr::Node& n, std::string& out) {
  using Op = TimeExpr::Op;
  switch (n.op) {
    case Op::literal:
      out += format_real(n.value);
      return;
    case Op::var:
      out += 't';
      return;
    case Op::add:
    case Op::sub:
    case Op::mul:
    case Op::div: {
      const char* sym = n.op == Op::add ? " + " : n.op == Op::sub ? " - " : n.op == Op::mul ? " * " : " / ";
      out += '(';
      print_node(*n.lhs, out);
      out += sym;
      print_node(*n.rhs, out);
      out += ')';
      return;
    }
    case Op::neg:
      // "-(x)" keeps a negated literal distinct from a negative literal.
      out += "(-(";
      print_node(*n.lhs, out);
      out += "))";
      return;
    case Op::sin:
    case Op::cos:
    case Op::exp:
      out += n.op == Op::sin ? "sin(" : n.op == Op::cos ? "cos(" : "exp(";
      print_node(*n.lhs, out);
      out += ')';
      return;
    case Op::pow:
      out += "pow(";
      print_node(*n.lhs, out);
      out += ", ";
      out += std::to_string(n.exponent);
      out += ')';
      return;
  }
}

}  // namespace

double TimeExpr::eval(double t) const { return eval_node(*node_, t); }

bool TimeExpr::depends_on_t() const { return node_->uses_t; }

bool TimeExpr::is_zero_literal() const { return node_->op == Op::literal && node_->value == 0.0; }

TimeExpr::Op TimeExpr::op() const { return node_->op; }

std::string TimeExpr::to_string() const {
  std::string out;
  print_node(*node_, out);
  return out;
}

bool TimeExpr::operator==(const TimeExpr& other) const {
  return equal_nodes(node_.get(), other.node_.get());
}

TimeExpr operator+(const TimeExpr& a, const TimeExpr& b) {
  return TimeExpr::binary(TimeExpr::Op::add, a, b);
}
TimeExpr operator-(const TimeExpr& a, const TimeExpr& b) {
  return TimeExpr::binary(TimeExpr::Op::sub, a, b);
}
TimeExpr operator*(const TimeExpr& a, const TimeExpr& b) {
  return TimeExpr::binary(TimeExpr::Op::mul, a, b);
}
TimeExpr operator-(const TimeExpr& a) { return TimeExpr::unary(TimeExpr::Op::neg, a); }

std::string format_real(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

namespace {

// Recursive-descent parser:
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | primary
//   primary := number | 't' | name '(' args ')' | '(' expr ')'
class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  TimeExpr parse() {
    TimeExpr e = expr();
    skip_ws();
    if (pos_ != text_.size()) {
      fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    }
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, ParseErrorKind kind = ParseErrorKind::syntax) const {
    throw ParseError(kind, msg + " in expression \"" + std::string(text_) + "\"", 1, pos_ + 1);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      fail(std::string("expected '") + c + "'");
    }
  }

  TimeExpr expr() {
    TimeExpr lhs = term();
    while (true) {
      if (accept('+')) {
        lhs = TimeExpr::binary(TimeExpr::Op::add, lhs, term());
      } else if (accept('-')) {
        lhs = TimeExpr::binary(TimeExpr::Op::sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  TimeExpr term() {
    TimeExpr lhs = unary();
    while (true) {
      if (accept('*')) {
        lhs = TimeExpr::binary(TimeExpr::Op::mul, lhs, unary());
      } else if (accept('/')) {
        lhs = TimeExpr::binary(TimeExpr::Op::div, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  TimeExpr unary() {
    if (accept('-')) {
      skip_ws();
      // "-<number>" is a negative literal so that printed literals re-parse unchanged.
      if (pos_ < text_.size() && starts_number()) {
        return TimeExpr::constant(-number());
      }
      return TimeExpr::unary(TimeExpr::Op::neg, unary());
    }
    return primary();
  }

  bool starts_number() const {
    const char c = text_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.';
  }

  double number() {
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    double value = 0.0;
    const auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc()) {
      fail("malformed number");
    }
    pos_ += static_cast<std::size_t>(res.ptr - begin);
    return value;
  }

  std::string identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  int integer_argument() {
    skip_ws();
    bool negative = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      negative = text_[pos_] == '-';
      ++pos_;
    }
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    int value = 0;
    const auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc() || res.ptr == begin) {
      fail("pow exponent must be an integer literal");
    }
    pos_ += static_cast<std::size_t>(res.ptr - begin);
    return negative ? -value : value;
  }

  TimeExpr primary() {
    skip_ws();
    if (pos_ >= text_.size()) {
      fail("unexpected end of expression");
    }
    if (starts_number()) {
      return TimeExpr::constant(number());
    }
    if (accept('(')) {
      TimeExpr e = expr();
      expect(')');
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_') {
      const std::size_t start = pos_;
      const std::string name = identifier();
      skip_ws();
      const bool call = pos_ < text_.size() && text_[pos_] == '(';
      if (!call) {
        if (name == "t") {
          return TimeExpr::variable();
        }
        pos_ = start;
        fail("unknown identifier '" + name + "'");
      }
      ++pos_;
      if (name == "sin" || name == "cos" || name == "exp") {
        TimeExpr arg = expr();
        expect(')');
        const auto op = name == "sin" ? TimeExpr::Op::sin
                        : name == "cos" ? TimeExpr::Op::cos
                                        : TimeExpr::Op::exp;
        return TimeExpr::unary(op, arg);
      }
      if (name == "pow") {
        TimeExpr base = expr();
        expect(',');
        const int e = integer_argument();
        expect(')');
        return TimeExpr::power(base, e);
      }
      pos_ = start;
      fail("unknown function '" + name + "'", ParseErrorKind::unknown_function);
    }
    fail("unexpected '" + std::string(1, text_[pos_]) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

TimeExpr parse_time_expr(std::string_view text) { return ExprParser(text).parse(); }

}  // namespace fdode
