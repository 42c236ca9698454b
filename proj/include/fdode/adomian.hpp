#pragma once

#include <algorithm>
#include <cstddef>
#include <type_traits>
#include <vector>

#include "fdode/linalg.hpp"
#include "fdode/problem.hpp"

namespace fdode {

/// Polynomial in tau truncated after tau^order. Coefficients are scalars,
/// vectors or matrices; `zero` fixes the shape of the non-scalar ones.
template <class T>
class TauSeries {
 public:
  TauSeries(std::size_t order, const T& zero) : c_(order + 1, zero), zero_(zero) {}
  TauSeries(std::vector<T> coeffs, const T& zero) : c_(std::move(coeffs)), zero_(zero) {}

  std::size_t order() const noexcept { return c_.size() - 1; }
  const T& operator[](std::size_t k) const { return c_[k]; }
  T& operator[](std::size_t k) { return c_[k]; }
  const std::vector<T>& coeffs() const noexcept { return c_; }
  const T& zero() const noexcept { return zero_; }

  TauSeries& operator+=(const TauSeries& o) {
    for (std::size_t k = 0; k < c_.size() && k < o.c_.size(); ++k) {
      c_[k] += o.c_[k];
    }
    return *this;
  }
  TauSeries& operator-=(const TauSeries& o) {
    for (std::size_t k = 0; k < c_.size() && k < o.c_.size(); ++k) {
      c_[k] -= o.c_[k];
    }
    return *this;
  }
  TauSeries& operator*=(double s) {
    for (auto& x : c_) {
      x *= s;
    }
    return *this;
  }

  /// Value of the truncated polynomial at tau.
  T eval(double tau) const {
    T acc = c_.back();
    for (std::size_t k = c_.size() - 1; k-- > 0;) {
      acc = T(acc * tau + c_[k]);
    }
    return acc;
  }

 private:
  std::vector<T> c_;
  T zero_;
};

template <class T>
TauSeries<T> operator+(TauSeries<T> a, const TauSeries<T>& b) {
  return a += b;
}
template <class T>
TauSeries<T> operator-(TauSeries<T> a, const TauSeries<T>& b) {
  return a -= b;
}
template <class T>
TauSeries<T> operator*(double s, TauSeries<T> a) {
  return a *= s;
}

/// Cauchy product truncated at the smaller order: (a b)_k = sum_{i+j=k} a_i b_j.
template <class T>
TauSeries<T> operator*(const TauSeries<T>& a, const TauSeries<T>& b) {
  const std::size_t n = std::min(a.order(), b.order());
  TauSeries<T> out(n, a.zero());
  for (std::size_t k = 0; k <= n; ++k) {
    T acc = a.zero();
    for (std::size_t i = 0; i <= k; ++i) {
      acc += a[i] * b[k - i];
    }
    out[k] = acc;
  }
  return out;
}

/// Scalar series times a matrix- or vector-valued series.
template <class T>
  requires(!std::is_same_v<T, double>)
TauSeries<T> operator*(const TauSeries<double>& a, const TauSeries<T>& b) {
  const std::size_t n = std::min(a.order(), b.order());
  TauSeries<T> out(n, b.zero());
  for (std::size_t k = 0; k <= n; ++k) {
    T acc = b.zero();
    for (std::size_t i = 0; i <= k; ++i) {
      acc += a[i] * b[k - i];
    }
    out[k] = acc;
  }
  return out;
}

using ScalarSeries = TauSeries<double>;

ScalarSeries scalar_series(std::vector<double> coeffs);
/// a^e by binary exponentiation; a^0 is the constant series 1.
ScalarSeries power(const ScalarSeries& a, int e);

/// Adomian polynomials A_0..A_n of u -> N(t, u) for the inputs v_0..v_n: the
/// tau^k coefficients of N(t, sum tau^i v_i).
std::vector<Matrix> adomian_matrix(const ProblemSpec& spec, double t, const std::vector<Vector>& v);
/// Same, with the term coefficients already evaluated at t.
std::vector<Matrix> adomian_matrix(const ProblemSpec& spec, const std::vector<Matrix>& coeffs,
                                   const std::vector<Vector>& v);

/// Adomian polynomials of the scalar majorant for inputs x_0..x_n.
std::vector<double> adomian_scalar(const Majorant& maj, const std::vector<double>& x);

/// Polynomial vector field u -> sum_k u^{powers_k} c_k(t) with vector coefficients.
struct VectorTerm {
  std::vector<int> powers;
  std::vector<TimeExpr> coeff;
};

struct PolynomialField {
  int dim = 0;
  std::vector<VectorTerm> terms;
};

/// u -> N(t,u) u - L u, merged by multi-index.
PolynomialField nonlinear_remainder(const ProblemSpec& spec, const Matrix& L);

Vector eval_field(const PolynomialField& field, double t, const Vector& u);

std::vector<Vector> adomian_vector_field(const PolynomialField& field, double t,
                                         const std::vector<Vector>& v);

}  // namespace fdode
