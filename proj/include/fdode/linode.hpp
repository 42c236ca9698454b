#pragma once

#include <functional>
#include <vector>

#include "fdode/grid.hpp"
#include "fdode/linalg.hpp"
#include "fdode/problem.hpp"
#include "fdode/trajectory.hpp"

namespace fdode {

/// y' = M(t) y + g(t) on [a, b], y(a) = y0, with M and g given at the 2M+1
/// layout samples of [a, b].
struct SampledLinearIVP {
  double a = 0.0;
  double b = 1.0;
  InnerLayout layout;
  std::vector<Matrix> coefficient;  // one per sample
  Matrix forcing;                   // dim x samples
  Vector y0;
};

/// Same problem with evaluable coefficient and forcing.
struct LinearIVP {
  double a = 0.0;
  double b = 1.0;
  std::function<Matrix(double)> coefficient;
  std::function<Vector(double)> forcing;  // empty means g = 0
  Vector y0;
  int inner_steps = 16;
};

/// Classical RK4 over the M steps of width (b-a)/M; node values at even samples,
/// step midpoints by cubic Hermite from node values and slopes. Returns a
/// dim x (2M+1) block. Throws NumericalFailure("linode", ...) on a non-finite state.
Matrix solve_linear_ivp(const SampledLinearIVP& ivp);
Matrix solve_linear_ivp(const LinearIVP& ivp);

/// U(t) at the layout samples of [a, b], U(a) = I, solved column by column.
struct FundamentalMatrix {
  double a = 0.0;
  double b = 1.0;
  InnerLayout layout;
  std::vector<Matrix> samples;

  /// K(t_k, t_l) = U(t_k) U(t_l)^{-1}.
  Matrix cauchy_matrix(int k, int l) const;
  /// min |det U| over the samples.
  double min_abs_determinant() const;
};

FundamentalMatrix fundamental_matrix(double a, double b, const std::function<Matrix(double)>& coefficient,
                                     int inner_steps);
FundamentalMatrix fundamental_matrix(double a, double b, const std::vector<Matrix>& coefficient,
                                     InnerLayout layout);

using Rhs = std::function<Vector(double, const Vector&)>;

struct Dopri5Stats {
  long accepted = 0;
  long rejected = 0;
};

/// Adaptive Dormand-Prince 5(4) with atol = rtol = tol. Steps are clipped so
/// that every output time is hit exactly; times must be sorted and >= t0.
/// Throws NumericalFailure("linode", ...) on step-size underflow or blow-up.
std::vector<Vector> dopri5(const Rhs& f, double t0, const Vector& y0, const std::vector<double>& times,
                           double tol, Dopri5Stats* stats = nullptr);

/// u' = f(t, u) resampled onto the grid's inner layout.
PiecewiseTrajectory reference_solve(const Rhs& f, const Vector& y0, const Grid& grid,
                                    InnerLayout layout, double tol);

/// u' = N(t,u) u + phi(t), u(t0) = u0. tol must lie in [1e-12, 1e-3].
PiecewiseTrajectory reference_solve(const ProblemSpec& spec, const Grid& grid, InnerLayout layout,
                                    double tol);

}  // namespace fdode
