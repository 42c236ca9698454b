#pragma once

#include <Eigen/Dense>

namespace fdode {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Spectral norm (operator norm induced by the Euclidean vector norm),
/// by power iteration on A^T A.
double spectral_norm(const Matrix& a, int max_iterations = 50, double tolerance = 1e-12);

/// Largest eigenvalue of the symmetric part (A + A^T) / 2.
double max_symmetric_eigenvalue(const Matrix& a);

bool all_finite(const Vector& v);
bool all_finite(const Matrix& m);

}  // namespace fdode
