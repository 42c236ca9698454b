#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fdode/expr.hpp"
#include "fdode/linalg.hpp"

namespace fdode {

/// One monomial u_1^{i_1} ... u_m^{i_m} of N(t, u) with its m x m coefficient matrix.
struct Term {
  std::vector<int> powers;
  std::vector<std::vector<TimeExpr>> matrix;  // row-major, m rows of m entries

  int degree() const;
  bool operator==(const Term&) const = default;
};

/// Cauchy problem u' - N(t,u) u = phi(t), u(t0) = u0, with N polynomial in u.
struct ProblemSpec {
  std::string name;
  int dim = 0;
  double t0 = 0.0;
  Vector u0;
  std::vector<Term> terms;
  std::vector<TimeExpr> phi;
  std::optional<std::vector<TimeExpr>> exact;
  std::optional<std::vector<double>> majorant;

  /// Throws InvalidArgument on any broken invariant (shapes, duplicate
  /// multi-indices, negative powers or majorant coefficients).
  void validate() const;

  int degree() const;
  /// True when no term has a positive power, i.e. N does not depend on u.
  bool linear() const;

  bool operator==(const ProblemSpec& other) const;
};

/// Coefficient matrices of every term evaluated at t, in term order.
std::vector<Matrix> coefficients_at(const ProblemSpec& spec, double t);

Matrix eval_N(const ProblemSpec& spec, double t, const Vector& u);
/// Same, with coefficients already evaluated by coefficients_at.
Matrix eval_N(const ProblemSpec& spec, const std::vector<Matrix>& coeffs, const Vector& u);

/// dN/du_p, p is 0-based.
Matrix eval_dN(const ProblemSpec& spec, double t, const Vector& u, int p);
Matrix eval_dN(const ProblemSpec& spec, const std::vector<Matrix>& coeffs, const Vector& u, int p);

Vector eval_phi(const ProblemSpec& spec, double t);
/// Empty when the spec carries no exact solution.
std::optional<Vector> eval_exact(const ProblemSpec& spec, double t);

/// Scalar polynomial N~(u) = sum B_i u^i with B_i >= 0.
struct Majorant {
  std::vector<double> coeffs;

  double operator()(double u) const;
  bool operator==(const Majorant&) const = default;
};

/// Declared majorant if present, otherwise B_p = sum over terms of degree p of
/// the sampled sup over [a, b] of the spectral norm of the coefficient.
Majorant compute_majorant(const ProblemSpec& spec, double a, double b, int samples = 1024);

ProblemSpec parse_problem(std::string_view text);
std::string serialize_problem(const ProblemSpec& spec);

/// Built-in problems: paper_example, linear_decay, cubic_1d.
std::vector<std::string> builtin_problem_names();
std::optional<ProblemSpec> builtin_problem(std::string_view name);

/// A built-in name or a path to a problem file. Throws ParseError on bad files and
/// InvalidArgument when the file cannot be read.
ProblemSpec load_problem(const std::string& name_or_path);

}  // namespace fdode
