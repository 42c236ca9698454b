#include "fdode/linalg.hpp"

#include <cmath>

#include "fdode/errors.hpp"

namespace fdode {

double spectral_norm(const Matrix& a, int max_iterations, double tolerance) {
  if (a.size() == 0) {
    return 0.0;
  }
  const Matrix gram = a.transpose() * a;
  const auto n = gram.rows();
  // Start away from any coordinate axis so that diagonal and permutation-like
  // matrices are not started in a deficient subspace.
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v(i) = 1.0 + 0.1 * static_cast<double>(i);
  }
  v.normalize();

  double lambda = v.dot(gram * v);
  for (int it = 0; it < max_iterations; ++it) {
    Vector w = gram * v;
    const double norm = w.norm();
    if (norm == 0.0) {
      break;
    }
    v = w / norm;
    const double next = v.dot(gram * v);
    const bool converged = std::abs(next - lambda) <= tolerance * std::max(1.0, std::abs(next));
    lambda = next;
    if (converged) {
      break;
    }
  }
  // The Rayleigh quotient never exceeds the true top eigenvalue; guard with
  // the column-norm lower bound for the case where v fell into a null space.
  double column_bound = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    column_bound = std::max(column_bound, a.col(j).squaredNorm());
  }
  return std::sqrt(std::max({lambda, column_bound, 0.0}));
}

double max_symmetric_eigenvalue(const Matrix& a) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw InvalidArgument("max_symmetric_eigenvalue: matrix must be square and non-empty");
  }
  const Matrix sym = 0.5 * (a + a.transpose());
  if (sym.rows() == 1) {
    return sym(0, 0);
  }
  if (sym.rows() == 2) {
    const double mean = 0.5 * (sym(0, 0) + sym(1, 1));
    const double half_diff = 0.5 * (sym(0, 0) - sym(1, 1));
    return mean + std::hypot(half_diff, sym(0, 1));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("linalg", "symmetric eigen-solver did not converge");
  }
  return solver.eigenvalues().maxCoeff();
}

bool all_finite(const Vector& v) { return v.allFinite(); }

bool all_finite(const Matrix& m) { return m.allFinite(); }

}  // namespace fdode
