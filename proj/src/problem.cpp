#include "fdode/problem.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "builtin_problems.hpp"
#include "fdode/errors.hpp"
#include "fdode/sampling.hpp"
#include "toml_lite.hpp"

namespace fdode {

int Term::degree() const {
  int d = 0;
  for (int p : powers) {
    d += p;
  }
  return d;
}

void ProblemSpec::validate() const {
  if (dim <= 0) {
    throw InvalidArgument("problem: dim must be positive");
  }
  const auto m = static_cast<std::size_t>(dim);
  if (!std::isfinite(t0)) {
    throw InvalidArgument("problem: t0 must be finite");
  }
  if (static_cast<std::size_t>(u0.size()) != m || !all_finite(u0)) {
    throw InvalidArgument("problem: u0 must hold dim finite values");
  }
  if (phi.size() != m) {
    throw InvalidArgument("problem: phi must have dim entries");
  }
  if (exact && exact->size() != m) {
    throw InvalidArgument("problem: exact must have dim entries");
  }
  if (majorant) {
    for (double b : *majorant) {
      if (!(b >= 0.0) || !std::isfinite(b)) {
        throw InvalidArgument("problem: majorant coefficients must be finite and non-negative");
      }
    }
  }
  std::set<std::vector<int>> seen;
  for (const Term& term : terms) {
    if (term.powers.size() != m) {
      throw InvalidArgument("problem: term powers must have dim entries");
    }
    for (int p : term.powers) {
      if (p < 0) {
        throw InvalidArgument("problem: term powers must be non-negative");
      }
    }
    if (term.matrix.size() != m) {
      throw InvalidArgument("problem: term matrix must have dim rows");
    }
    for (const auto& row : term.matrix) {
      if (row.size() != m) {
        throw InvalidArgument("problem: term matrix rows must have dim entries");
      }
    }
    if (!seen.insert(term.powers).second) {
      throw InvalidArgument("problem: duplicate multi-index among terms");
    }
  }
}

int ProblemSpec::degree() const {
  int d = 0;
  for (const Term& term : terms) {
    d = std::max(d, term.degree());
  }
  return d;
}

bool ProblemSpec::linear() const { return degree() == 0; }

bool ProblemSpec::operator==(const ProblemSpec& other) const {
  if (name != other.name || dim != other.dim || t0 != other.t0 || terms != other.terms ||
      phi != other.phi || exact != other.exact || majorant != other.majorant) {
    return false;
  }
  return u0.size() == other.u0.size() && u0 == other.u0;
}

std::vector<Matrix> coefficients_at(const ProblemSpec& spec, double t) {
  std::vector<Matrix> out;
  out.reserve(spec.terms.size());
  for (const Term& term : spec.terms) {
    Matrix c(spec.dim, spec.dim);
    for (int r = 0; r < spec.dim; ++r) {
      for (int s = 0; s < spec.dim; ++s) {
        c(r, s) = term.matrix[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)].eval(t);
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

namespace {

double int_power(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) {
    r *= x;
  }
  return r;
}

void check_state(const ProblemSpec& spec, const Vector& u, const char* who) {
  if (u.size() != spec.dim) {
    throw InvalidArgument(std::string(who) + ": state has wrong dimension");
  }
  if (!all_finite(u)) {
    throw InvalidArgument(std::string(who) + ": non-finite state");
  }
}

}  // namespace

Matrix eval_N(const ProblemSpec& spec, const std::vector<Matrix>& coeffs, const Vector& u) {
  check_state(spec, u, "eval_N");
  Matrix out = Matrix::Zero(spec.dim, spec.dim);
  for (std::size_t k = 0; k < spec.terms.size(); ++k) {
    double mono = 1.0;
    const auto& powers = spec.terms[k].powers;
    for (int p = 0; p < spec.dim; ++p) {
      mono *= int_power(u(p), powers[static_cast<std::size_t>(p)]);
    }
    out += mono * coeffs[k];
  }
  return out;
}

Matrix eval_N(const ProblemSpec& spec, double t, const Vector& u) {
  if (!std::isfinite(t)) {
    throw InvalidArgument("eval_N: non-finite t");
  }
  return eval_N(spec, coefficients_at(spec, t), u);
}

Matrix eval_dN(const ProblemSpec& spec, const std::vector<Matrix>& coeffs, const Vector& u, int p) {
  check_state(spec, u, "eval_dN");
  if (p < 0 || p >= spec.dim) {
    throw InvalidArgument("eval_dN: component index out of range");
  }
  Matrix out = Matrix::Zero(spec.dim, spec.dim);
  for (std::size_t k = 0; k < spec.terms.size(); ++k) {
    const auto& powers = spec.terms[k].powers;
    const int ip = powers[static_cast<std::size_t>(p)];
    if (ip == 0) {
      continue;
    }
    double mono = ip * int_power(u(p), ip - 1);
    for (int q = 0; q < spec.dim; ++q) {
      if (q != p) {
        mono *= int_power(u(q), powers[static_cast<std::size_t>(q)]);
      }
    }
    out += mono * coeffs[k];
  }
  return out;
}

Matrix eval_dN(const ProblemSpec& spec, double t, const Vector& u, int p) {
  if (!std::isfinite(t)) {
    throw InvalidArgument("eval_dN: non-finite t");
  }
  return eval_dN(spec, coefficients_at(spec, t), u, p);
}

Vector eval_phi(const ProblemSpec& spec, double t) {
  Vector out(spec.dim);
  for (int r = 0; r < spec.dim; ++r) {
    out(r) = spec.phi[static_cast<std::size_t>(r)].eval(t);
  }
  return out;
}

std::optional<Vector> eval_exact(const ProblemSpec& spec, double t) {
  if (!spec.exact) {
    return std::nullopt;
  }
  Vector out(spec.dim);
  for (int r = 0; r < spec.dim; ++r) {
    out(r) = (*spec.exact)[static_cast<std::size_t>(r)].eval(t);
  }
  return out;
}

double Majorant::operator()(double u) const {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = acc * u + *it;
  }
  return acc;
}

Majorant compute_majorant(const ProblemSpec& spec, double a, double b, int samples) {
  if (spec.majorant) {
    return Majorant{*spec.majorant};
  }
  if (!(b > a)) {
    throw InvalidArgument("compute_majorant: empty t range");
  }
  Majorant out;
  out.coeffs.assign(static_cast<std::size_t>(spec.degree()) + 1, 0.0);
  for (const Term& term : spec.terms) {
    bool varies = false;
    for (const auto& row : term.matrix) {
      for (const TimeExpr& e : row) {
        varies = varies || e.depends_on_t();
      }
    }
    const auto norm_at = [&](double t) {
      Matrix c(spec.dim, spec.dim);
      for (int r = 0; r < spec.dim; ++r) {
        for (int s = 0; s < spec.dim; ++s) {
          c(r, s) = term.matrix[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)].eval(t);
        }
      }
      return spectral_norm(c);
    };
    const double sup = varies ? uniform_sup(norm_at, a, b, samples).value : norm_at(a);
    out.coeffs[static_cast<std::size_t>(term.degree())] += sup;
  }
  return out;
}

// ---------------------------------------------------------------------------
// problem files

namespace {

using toml_lite::Value;

[[noreturn]] void fail_at(ParseErrorKind kind, const std::string& msg, const Value& v) {
  throw ParseError(kind, msg, v.line, v.column);
}

const toml_lite::Entry& require(const toml_lite::Table& table, const std::string& key,
                                const std::string& where) {
  const auto it = table.entries.find(key);
  if (it == table.entries.end()) {
    throw ParseError(ParseErrorKind::missing_key, "missing key '" + key + "'" + where, table.line, 1);
  }
  return it->second;
}

double as_real(const Value& v, const std::string& what) {
  if (v.kind == Value::Kind::real) {
    return v.real;
  }
  if (v.kind == Value::Kind::integer) {
    return static_cast<double>(v.integer);
  }
  fail_at(ParseErrorKind::invalid_value, what + " must be a number, got " +
                                             toml_lite::kind_name(v.kind), v);
}

const std::vector<Value>& as_array(const Value& v, const std::string& what) {
  if (v.kind != Value::Kind::array) {
    fail_at(ParseErrorKind::invalid_value,
            what + " must be an array, got " + toml_lite::kind_name(v.kind), v);
  }
  return v.items;
}

void require_length(const Value& v, std::size_t n, const std::string& what) {
  if (v.items.size() != n) {
    fail_at(ParseErrorKind::dimension_mismatch,
            what + " has " + std::to_string(v.items.size()) + " entries, expected " +
                std::to_string(n),
            v);
  }
}

TimeExpr as_expr(const Value& v, const std::string& what) {
  if (v.kind == Value::Kind::integer || v.kind == Value::Kind::real) {
    return TimeExpr::constant(as_real(v, what));
  }
  if (v.kind != Value::Kind::string) {
    fail_at(ParseErrorKind::invalid_value, what + " must be an expression string", v);
  }
  try {
    return parse_time_expr(v.string);
  } catch (const ParseError& e) {
    // The string starts one column after its opening quote.
    throw ParseError(e.kind(), what + ": " + e.message(), v.line, v.column + e.column());
  }
}

std::vector<TimeExpr> expr_vector(const Value& v, std::size_t n, const std::string& what) {
  as_array(v, what);
  require_length(v, n, what);
  std::vector<TimeExpr> out;
  for (std::size_t k = 0; k < n; ++k) {
    out.push_back(as_expr(v.items[k], what + "[" + std::to_string(k + 1) + "]"));
  }
  return out;
}

}  // namespace

ProblemSpec parse_problem(std::string_view text) {
  const toml_lite::Document doc = toml_lite::parse(text);
  const toml_lite::Table& root = doc.root;
  static const std::set<std::string> known = {"name", "dim", "t0", "u0", "phi", "exact", "majorant"};
  for (const auto& [key, entry] : root.entries) {
    if (known.count(key) == 0) {
      throw ParseError(ParseErrorKind::invalid_value, "unknown key '" + key + "'", entry.key_line,
                       entry.key_column);
    }
  }
  for (const auto& [name, tables] : doc.table_arrays) {
    if (name != "term") {
      throw ParseError(ParseErrorKind::invalid_value, "unknown table array [[" + name + "]]",
                       tables.front().line, 1);
    }
  }

  ProblemSpec spec;
  if (const auto it = root.entries.find("name"); it != root.entries.end()) {
    if (it->second.value.kind != Value::Kind::string) {
      fail_at(ParseErrorKind::invalid_value, "name must be a string", it->second.value);
    }
    spec.name = it->second.value.string;
  }

  const Value& dim_v = require(root, "dim", "").value;
  if (dim_v.kind != Value::Kind::integer || dim_v.integer <= 0 || dim_v.integer > 64) {
    fail_at(ParseErrorKind::invalid_value, "dim must be an integer in 1..64", dim_v);
  }
  spec.dim = static_cast<int>(dim_v.integer);
  const auto m = static_cast<std::size_t>(spec.dim);

  if (const auto it = root.entries.find("t0"); it != root.entries.end()) {
    spec.t0 = as_real(it->second.value, "t0");
    if (!std::isfinite(spec.t0)) {
      fail_at(ParseErrorKind::invalid_value, "t0 must be finite", it->second.value);
    }
  }

  const Value& u0_v = require(root, "u0", "").value;
  as_array(u0_v, "u0");
  require_length(u0_v, m, "u0");
  spec.u0.resize(spec.dim);
  for (std::size_t k = 0; k < m; ++k) {
    spec.u0(static_cast<Eigen::Index>(k)) = as_real(u0_v.items[k], "u0");
    if (!std::isfinite(spec.u0(static_cast<Eigen::Index>(k)))) {
      fail_at(ParseErrorKind::invalid_value, "u0 entries must be finite", u0_v.items[k]);
    }
  }

  spec.phi = expr_vector(require(root, "phi", "").value, m, "phi");
  if (const auto it = root.entries.find("exact"); it != root.entries.end()) {
    spec.exact = expr_vector(it->second.value, m, "exact");
  }
  if (const auto it = root.entries.find("majorant"); it != root.entries.end()) {
    std::vector<double> coeffs;
    for (const Value& item : as_array(it->second.value, "majorant")) {
      const double b = as_real(item, "majorant");
      if (!(b >= 0.0) || !std::isfinite(b)) {
        fail_at(ParseErrorKind::invalid_value, "majorant coefficients must be finite and >= 0", item);
      }
      coeffs.push_back(b);
    }
    spec.majorant = std::move(coeffs);
  }

  std::set<std::vector<int>> seen;
  if (const auto it = doc.table_arrays.find("term"); it != doc.table_arrays.end()) {
    for (const toml_lite::Table& table : it->second) {
      for (const auto& [key, entry] : table.entries) {
        if (key != "powers" && key != "matrix") {
          throw ParseError(ParseErrorKind::invalid_value, "unknown key '" + key + "' in [[term]]",
                           entry.key_line, entry.key_column);
        }
      }
      Term term;
      const Value& pw = require(table, "powers", " in [[term]]").value;
      as_array(pw, "powers");
      require_length(pw, m, "powers");
      for (const Value& item : pw.items) {
        if (item.kind != Value::Kind::integer || item.integer < 0 || item.integer > 1000) {
          fail_at(ParseErrorKind::invalid_value, "powers must be non-negative integers", item);
        }
        term.powers.push_back(static_cast<int>(item.integer));
      }
      const Value& mat = require(table, "matrix", " in [[term]]").value;
      as_array(mat, "matrix");
      require_length(mat, m, "matrix");
      for (std::size_t r = 0; r < m; ++r) {
        term.matrix.push_back(expr_vector(mat.items[r], m, "matrix row " + std::to_string(r + 1)));
      }
      if (!seen.insert(term.powers).second) {
        fail_at(ParseErrorKind::duplicate_term, "multi-index appears in more than one [[term]]", pw);
      }
      spec.terms.push_back(std::move(term));
    }
  }
  spec.validate();
  return spec;
}

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out += '\\';
    }
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    if (c == '\t') {
      out += "\\t";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

std::string real_literal(double x) {
  std::string s = format_real(x);
  if (s.find_first_of(".eEn") == std::string::npos) {
    s += ".0";
  }
  return s;
}

std::string expr_list(const std::vector<TimeExpr>& exprs) {
  std::string out = "[";
  for (std::size_t k = 0; k < exprs.size(); ++k) {
    if (k > 0) {
      out += ", ";
    }
    out += quote(exprs[k].to_string());
  }
  return out + "]";
}

}  // namespace

std::string serialize_problem(const ProblemSpec& spec) {
  spec.validate();
  std::ostringstream out;
  if (!spec.name.empty()) {
    out << "name = " << quote(spec.name) << '\n';
  }
  out << "dim = " << spec.dim << '\n';
  out << "t0 = " << real_literal(spec.t0) << '\n';
  out << "u0 = [";
  for (int k = 0; k < spec.dim; ++k) {
    out << (k > 0 ? ", " : "") << real_literal(spec.u0(k));
  }
  out << "]\n";
  out << "phi = " << expr_list(spec.phi) << '\n';
  if (spec.exact) {
    out << "exact = " << expr_list(*spec.exact) << '\n';
  }
  if (spec.majorant) {
    out << "majorant = [";
    for (std::size_t k = 0; k < spec.majorant->size(); ++k) {
      out << (k > 0 ? ", " : "") << real_literal((*spec.majorant)[k]);
    }
    out << "]\n";
  }
  for (const Term& term : spec.terms) {
    out << "\n[[term]]\npowers = [";
    for (std::size_t k = 0; k < term.powers.size(); ++k) {
      out << (k > 0 ? ", " : "") << term.powers[k];
    }
    out << "]\nmatrix = [";
    for (std::size_t r = 0; r < term.matrix.size(); ++r) {
      out << (r > 0 ? ",\n          " : "") << expr_list(term.matrix[r]);
    }
    out << "]\n";
  }
  return out.str();
}

std::vector<std::string> builtin_problem_names() {
  return {"paper_example", "linear_decay", "cubic_1d"};
}

std::optional<ProblemSpec> builtin_problem(std::string_view name) {
  if (name == "paper_example") {
    return parse_problem(builtin_text::paper_example);
  }
  if (name == "linear_decay") {
    return parse_problem(builtin_text::linear_decay);
  }
  if (name == "cubic_1d") {
    return parse_problem(builtin_text::cubic_1d);
  }
  return std::nullopt;
}

ProblemSpec load_problem(const std::string& name_or_path) {
  if (auto spec = builtin_problem(name_or_path)) {
    return *spec;
  }
  std::ifstream in(name_or_path, std::ios::binary);
  if (!in) {
    throw InvalidArgument("cannot open problem file '" + name_or_path +
                          "' (and it is not a built-in problem name)");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

}  // namespace fdode
