#pragma once

// Reader for the small TOML subset used by problem files: comments, bare keys,
// `key = value` with integers, floats, basic strings and (nested, multi-line)
// arrays, and `[[name]]` array-of-tables headers.

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fdode::toml_lite {

struct Value {
  enum class Kind { integer, real, string, array };
  Kind kind = Kind::integer;
  long long integer = 0;
  double real = 0.0;
  std::string string;
  std::vector<Value> items;
  std::size_t line = 0;
  std::size_t column = 0;
};

struct Entry {
  Value value;
  std::size_t key_line = 0;
  std::size_t key_column = 0;
};

struct Table {
  std::map<std::string, Entry> entries;
  std::size_t line = 0;
};

struct Document {
  Table root;
  std::map<std::string, std::vector<Table>> table_arrays;
};

/// Throws ParseError(syntax) with line/column.
Document parse(std::string_view text);

const char* kind_name(Value::Kind kind) noexcept;

}  // namespace fdode::toml_lite
