#include "fdode/adomian.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "fdode/errors.hpp"

namespace fdode {

ScalarSeries scalar_series(std::vector<double> coeffs) {
  if (coeffs.empty()) {
    throw InvalidArgument("scalar_series: need at least one coefficient");
  }
  return ScalarSeries(std::move(coeffs), 0.0);
}

ScalarSeries power(const ScalarSeries& a, int e) {
  if (e < 0) {
    throw InvalidArgument("power: negative exponent");
  }
  ScalarSeries result(a.order(), 0.0);
  result[0] = 1.0;
  ScalarSeries base = a;
  while (e > 0) {
    if (e & 1) {
      result = result * base;
    }
    e >>= 1;
    if (e > 0) {
      base = base * base;
    }
  }
  return result;
}

namespace {

void check_inputs(int dim, const std::vector<Vector>& v, const char* who) {
  if (v.empty()) {
    throw InvalidArgument(std::string(who) + ": need at least v_0");
  }
  for (const Vector& x : v) {
    if (x.size() != dim) {
      throw InvalidArgument(std::string(who) + ": input has wrong dimension");
    }
  }
}

// Component series s_p(tau) = sum_i tau^i v_i(p) and a cache of their powers.
class ComponentPowers {
 public:
  explicit ComponentPowers(const std::vector<Vector>& v) : n_(v.size() - 1) {
    const auto m = static_cast<std::size_t>(v.front().size());
    for (std::size_t p = 0; p < m; ++p) {
      std::vector<double> c(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) {
        c[i] = v[i](static_cast<Eigen::Index>(p));
      }
      base_.push_back(scalar_series(std::move(c)));
    }
    cache_.resize(m);
  }

  const ScalarSeries& get(std::size_t p, int e) {
    auto& slot = cache_[p];
    auto it = slot.find(e);
    if (it == slot.end()) {
      it = slot.emplace(e, power(base_[p], e)).first;
    }
    return it->second;
  }

  // u^{powers} as a truncated series.
  ScalarSeries monomial(const std::vector<int>& powers) {
    ScalarSeries out(n_, 0.0);
    out[0] = 1.0;
    for (std::size_t p = 0; p < powers.size(); ++p) {
      if (powers[p] != 0) {
        out = out * get(p, powers[p]);
      }
    }
    return out;
  }

 private:
  std::size_t n_;
  std::vector<ScalarSeries> base_;
  std::vector<std::map<int, ScalarSeries>> cache_;
};

}  // namespace

std::vector<Matrix> adomian_matrix(const ProblemSpec& spec, const std::vector<Matrix>& coeffs,
                                   const std::vector<Vector>& v) {
  check_inputs(spec.dim, v, "adomian_matrix");
  const std::size_t n = v.size() - 1;
  std::vector<Matrix> out(n + 1, Matrix::Zero(spec.dim, spec.dim));
  ComponentPowers powers(v);
  for (std::size_t k = 0; k < spec.terms.size(); ++k) {
    const ScalarSeries mono = powers.monomial(spec.terms[k].powers);
    for (std::size_t i = 0; i <= n; ++i) {
      if (mono[i] != 0.0) {
        out[i] += mono[i] * coeffs[k];
      }
    }
  }
  return out;
}

std::vector<Matrix> adomian_matrix(const ProblemSpec& spec, double t, const std::vector<Vector>& v) {
  return adomian_matrix(spec, coefficients_at(spec, t), v);
}

std::vector<double> adomian_scalar(const Majorant& maj, const std::vector<double>& x) {
  if (x.empty()) {
    throw InvalidArgument("adomian_scalar: need at least x_0");
  }
  for (double xi : x) {
    if (!std::isfinite(xi)) {
      throw InvalidArgument("adomian_scalar: non-finite input");
    }
  }
  const ScalarSeries xs = scalar_series(x);
  ScalarSeries acc(xs.order(), 0.0);
  for (auto it = maj.coeffs.rbegin(); it != maj.coeffs.rend(); ++it) {
    acc = acc * xs;
    acc[0] += *it;
  }
  return acc.coeffs();
}

PolynomialField nonlinear_remainder(const ProblemSpec& spec, const Matrix& L) {
  if (L.rows() != spec.dim || L.cols() != spec.dim) {
    throw InvalidArgument("nonlinear_remainder: L must be dim x dim");
  }
  const auto m = static_cast<std::size_t>(spec.dim);
  std::map<std::vector<int>, std::vector<TimeExpr>> merged;
  auto add = [&](std::vector<int> powers, std::vector<TimeExpr> coeff) {
    auto it = merged.find(powers);
    if (it == merged.end()) {
      merged.emplace(std::move(powers), std::move(coeff));
      return;
    }
    for (std::size_t r = 0; r < m; ++r) {
      it->second[r] = it->second[r] + coeff[r];
    }
  };
  // N(t,u) u = sum_terms sum_q u^{powers + e_q} C(t)[:, q]
  for (const Term& term : spec.terms) {
    for (std::size_t q = 0; q < m; ++q) {
      std::vector<int> powers = term.powers;
      ++powers[q];
      std::vector<TimeExpr> column;
      for (std::size_t r = 0; r < m; ++r) {
        column.push_back(term.matrix[r][q]);
      }
      add(std::move(powers), std::move(column));
    }
  }
  for (std::size_t q = 0; q < m; ++q) {
    std::vector<int> powers(m, 0);
    powers[q] = 1;
    std::vector<TimeExpr> column;
    for (std::size_t r = 0; r < m; ++r) {
      column.push_back(TimeExpr::constant(-L(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(q))));
    }
    add(std::move(powers), std::move(column));
  }
  PolynomialField field;
  field.dim = spec.dim;
  for (auto& [powers, coeff] : merged) {
    field.terms.push_back(VectorTerm{powers, std::move(coeff)});
  }
  return field;
}

namespace {

Vector coeff_at(const VectorTerm& term, double t) {
  Vector c(static_cast<Eigen::Index>(term.coeff.size()));
  for (std::size_t r = 0; r < term.coeff.size(); ++r) {
    c(static_cast<Eigen::Index>(r)) = term.coeff[r].eval(t);
  }
  return c;
}

void check_field(const PolynomialField& field) {
  for (const VectorTerm& term : field.terms) {
    if (term.powers.size() != static_cast<std::size_t>(field.dim) ||
        term.coeff.size() != static_cast<std::size_t>(field.dim)) {
      throw InvalidArgument("polynomial field: term shape does not match dim");
    }
  }
}

}  // namespace

Vector eval_field(const PolynomialField& field, double t, const Vector& u) {
  check_field(field);
  if (u.size() != field.dim) {
    throw InvalidArgument("eval_field: state has wrong dimension");
  }
  Vector out = Vector::Zero(field.dim);
  for (const VectorTerm& term : field.terms) {
    double mono = 1.0;
    for (int p = 0; p < field.dim; ++p) {
      for (int e = 0; e < term.powers[static_cast<std::size_t>(p)]; ++e) {
        mono *= u(p);
      }
    }
    out += mono * coeff_at(term, t);
  }
  return out;
}

std::vector<Vector> adomian_vector_field(const PolynomialField& field, double t,
                                         const std::vector<Vector>& v) {
  check_field(field);
  check_inputs(field.dim, v, "adomian_vector_field");
  const std::size_t n = v.size() - 1;
  std::vector<Vector> out(n + 1, Vector::Zero(field.dim));
  ComponentPowers powers(v);
  for (const VectorTerm& term : field.terms) {
    const ScalarSeries mono = powers.monomial(term.powers);
    const Vector c = coeff_at(term, t);
    for (std::size_t i = 0; i <= n; ++i) {
      if (mono[i] != 0.0) {
        out[i] += mono[i] * c;
      }
    }
  }
  return out;
}

}  // namespace fdode
