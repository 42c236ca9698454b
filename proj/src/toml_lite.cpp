#include "toml_lite.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

#include "fdode/errors.hpp"

namespace fdode::toml_lite {

namespace {

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  Document run() {
    Document doc;
    Table* current = &doc.root;
    while (true) {
      skip_blank_lines();
      if (at_end()) {
        break;
      }
      if (peek() == '[') {
        const std::size_t header_line = line_;
        if (!(pos_ + 1 < text_.size() && text_[pos_ + 1] == '[')) {
          fail("plain [table] headers are not supported; use [[name]]");
        }
        advance();
        advance();
        skip_inline_ws();
        const std::string name = bare_key();
        skip_inline_ws();
        expect(']');
        expect(']');
        end_of_line();
        auto& list = doc.table_arrays[name];
        list.emplace_back();
        list.back().line = header_line;
        current = &list.back();
        continue;
      }
      const std::size_t key_line = line_;
      const std::size_t key_col = column();
      const std::string key = bare_key();
      skip_inline_ws();
      expect('=');
      skip_inline_ws();
      Entry entry;
      entry.key_line = key_line;
      entry.key_column = key_col;
      entry.value = value();
      end_of_line();
      if (current->entries.count(key) != 0) {
        throw ParseError(ParseErrorKind::syntax, "duplicate key '" + key + "'", key_line, key_col);
      }
      current->entries.emplace(key, std::move(entry));
    }
    return doc;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(ParseErrorKind::syntax, msg, line_, column());
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  std::size_t column() const { return pos_ - line_start_ + 1; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      line_start_ = pos_ + 1;
    }
    ++pos_;
  }

  void expect(char c) {
    if (at_end() || peek() != c) {
      fail(std::string("expected '") + c + "'");
    }
    advance();
  }

  void skip_inline_ws() {
    while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) {
      advance();
    }
  }

  void skip_comment() {
    if (!at_end() && peek() == '#') {
      while (!at_end() && peek() != '\n') {
        advance();
      }
    }
  }

  // Whitespace, comments and newlines (inside arrays and between statements).
  void skip_blank_lines() {
    while (true) {
      skip_inline_ws();
      skip_comment();
      if (!at_end() && peek() == '\n') {
        advance();
        continue;
      }
      return;
    }
  }

  void end_of_line() {
    skip_inline_ws();
    skip_comment();
    if (at_end()) {
      return;
    }
    if (peek() != '\n') {
      fail("unexpected trailing characters");
    }
    advance();
  }

  std::string bare_key() {
    const std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' ||
                         peek() == '-')) {
      advance();
    }
    if (start == pos_) {
      fail("expected a key");
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  Value value() {
    if (at_end()) {
      fail("expected a value");
    }
    Value v;
    v.line = line_;
    v.column = column();
    const char c = peek();
    if (c == '"') {
      v.kind = Value::Kind::string;
      v.string = basic_string();
    } else if (c == '[') {
      v.kind = Value::Kind::array;
      advance();
      while (true) {
        skip_blank_lines();
        if (at_end()) {
          fail("unterminated array");
        }
        if (peek() == ']') {
          advance();
          break;
        }
        v.items.push_back(value());
        skip_blank_lines();
        if (!at_end() && peek() == ',') {
          advance();
          continue;
        }
        skip_blank_lines();
        expect(']');
        break;
      }
    } else {
      number(v);
    }
    return v;
  }

  std::string basic_string() {
    advance();
    std::string out;
    while (true) {
      if (at_end() || peek() == '\n') {
        fail("unterminated string");
      }
      const char c = peek();
      advance();
      if (c == '"') {
        return out;
      }
      if (c == '\\') {
        if (at_end()) {
          fail("unterminated escape");
        }
        const char e = peek();
        advance();
        switch (e) {
          case '"':
            out += '"';
            break;
          case '\\':
            out += '\\';
            break;
          case 'n':
            out += '\n';
            break;
          case 't':
            out += '\t';
            break;
          default:
            fail(std::string("unsupported escape '\\") + e + "'");
        }
        continue;
      }
      out += c;
    }
  }

  void number(Value& v) {
    const std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '+' ||
                         peek() == '-' || peek() == '.' || peek() == '_')) {
      advance();
    }
    std::string token(text_.substr(start, pos_ - start));
    std::erase(token, '_');
    if (token.empty()) {
      fail("expected a value");
    }
    const bool is_real = token.find_first_of(".eE") != std::string::npos || token == "inf" ||
                         token == "+inf" || token == "-inf" || token == "nan";
    const char* b = token.data();
    const char* e = token.data() + token.size();
    if (*b == '+') {
      ++b;
    }
    if (is_real) {
      const auto res = std::from_chars(b, e, v.real);
      if (res.ec != std::errc() || res.ptr != e) {
        throw ParseError(ParseErrorKind::syntax, "malformed number '" + token + "'", v.line, v.column);
      }
      v.kind = Value::Kind::real;
    } else {
      const auto res = std::from_chars(b, e, v.integer);
      if (res.ec != std::errc() || res.ptr != e) {
        throw ParseError(ParseErrorKind::syntax, "malformed value '" + token + "'", v.line, v.column);
      }
      v.kind = Value::Kind::integer;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t line_start_ = 0;
};

}  // namespace

Document parse(std::string_view text) { return Reader(text).run(); }

const char* kind_name(Value::Kind kind) noexcept {
  switch (kind) {
    case Value::Kind::integer:
      return "integer";
    case Value::Kind::real:
      return "float";
    case Value::Kind::string:
      return "string";
    case Value::Kind::array:
      return "array";
  }
  return "value";
}

}  // namespace fdode::toml_lite
