#include "fixtures.hpp"

#include <cmath>
#include <set>

namespace fdode::testing {

ProblemSpec random_spec(std::mt19937_64& rng, int dim, int terms, int max_degree, bool time_varying) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_int_distribution<int> power(0, max_degree);
  ProblemSpec spec;
  spec.name = "random";
  spec.dim = dim;
  spec.u0 = Vector::Zero(dim);
  for (int k = 0; k < dim; ++k) {
    spec.phi.push_back(TimeExpr::constant(0.0));
  }
  std::set<std::vector<int>> seen;
  int guard = 0;
  while (static_cast<int>(spec.terms.size()) < terms && guard++ < 1000) {
    std::vector<int> powers(static_cast<std::size_t>(dim), 0);
    int total = 0;
    for (int k = 0; k < dim; ++k) {
      powers[static_cast<std::size_t>(k)] = power(rng);
      total += powers[static_cast<std::size_t>(k)];
    }
    if (total > max_degree || !seen.insert(powers).second) {
      continue;
    }
    Term term;
    term.powers = powers;
    for (int r = 0; r < dim; ++r) {
      std::vector<TimeExpr> row;
      for (int s = 0; s < dim; ++s) {
        TimeExpr e = TimeExpr::constant(coef(rng));
        if (time_varying) {
          e = e + TimeExpr::constant(coef(rng)) * TimeExpr::unary(TimeExpr::Op::sin, TimeExpr::variable());
        }
        row.push_back(e);
      }
      term.matrix.push_back(std::move(row));
    }
    spec.terms.push_back(std::move(term));
  }
  return spec;
}

Vector random_vector(std::mt19937_64& rng, int dim, double scale) {
  std::uniform_real_distribution<double> d(-scale, scale);
  Vector v(dim);
  for (int k = 0; k < dim; ++k) {
    v(k) = d(rng);
  }
  return v;
}

ProblemSpec spec_from_text(const std::string& text) { return parse_problem(text); }

Matrix brute_force_N(const ProblemSpec& spec, double t, const Vector& u) {
  Matrix out = Matrix::Zero(spec.dim, spec.dim);
  for (const Term& term : spec.terms) {
    double mono = 1.0;
    for (int p = 0; p < spec.dim; ++p) {
      mono *= std::pow(u(p), term.powers[static_cast<std::size_t>(p)]);
    }
    for (int r = 0; r < spec.dim; ++r) {
      for (int s = 0; s < spec.dim; ++s) {
        out(r, s) += mono * term.matrix[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)].eval(t);
      }
    }
  }
  return out;
}

std::string source_path(const std::string& relative) { return std::string(FDODE_SOURCE_DIR) + "/" + relative; }

}  // namespace fdode::testing
