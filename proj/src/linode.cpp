#include "fdode/linode.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fdode/errors.hpp"

namespace fdode {

namespace {

[[noreturn]] void overflow(double t) {
  throw NumericalFailure("linode", "non-finite state near t = " + format_real(t));
}

void check_ivp(const SampledLinearIVP& ivp) {
  if (!(ivp.b > ivp.a)) {
    throw InvalidArgument("solve_linear_ivp: need b > a");
  }
  if (ivp.layout.inner_steps < 1) {
    throw InvalidArgument("solve_linear_ivp: inner_steps must be >= 1");
  }
  const auto n = static_cast<std::size_t>(ivp.layout.samples());
  const Eigen::Index dim = ivp.y0.size();
  if (dim == 0 || ivp.coefficient.size() != n || ivp.forcing.rows() != dim ||
      ivp.forcing.cols() != static_cast<Eigen::Index>(n)) {
    throw InvalidArgument("solve_linear_ivp: coefficient/forcing do not match the layout");
  }
  for (const Matrix& c : ivp.coefficient) {
    if (c.rows() != dim || c.cols() != dim) {
      throw InvalidArgument("solve_linear_ivp: coefficient has wrong shape");
    }
  }
}

}  // namespace

Matrix solve_linear_ivp(const SampledLinearIVP& ivp) {
  check_ivp(ivp);
  const int steps = ivp.layout.inner_steps;
  const double delta = (ivp.b - ivp.a) / steps;
  const double half = 0.5 * delta;
  Matrix out(ivp.y0.size(), ivp.layout.samples());
  out.col(0) = ivp.y0;
  Vector y = ivp.y0;
  for (int n = 0; n < steps; ++n) {
    const int k0 = 2 * n;
    const Matrix& m0 = ivp.coefficient[static_cast<std::size_t>(k0)];
    const Matrix& m1 = ivp.coefficient[static_cast<std::size_t>(k0 + 1)];
    const Matrix& m2 = ivp.coefficient[static_cast<std::size_t>(k0 + 2)];
    const Vector k1 = m0 * y + ivp.forcing.col(k0);
    const Vector k2 = m1 * (y + half * k1) + ivp.forcing.col(k0 + 1);
    const Vector k3 = m1 * (y + half * k2) + ivp.forcing.col(k0 + 1);
    const Vector k4 = m2 * (y + delta * k3) + ivp.forcing.col(k0 + 2);
    const Vector next = y + (delta / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!all_finite(next)) {
      overflow(ivp.layout.time(ivp.a, ivp.b, k0 + 2));
    }
    const Vector f_next = m2 * next + ivp.forcing.col(k0 + 2);
    out.col(k0 + 1) = 0.5 * (y + next) + (delta / 8.0) * (k1 - f_next);
    out.col(k0 + 2) = next;
    y = next;
  }
  return out;
}

Matrix solve_linear_ivp(const LinearIVP& ivp) {
  SampledLinearIVP s;
  s.a = ivp.a;
  s.b = ivp.b;
  s.layout.inner_steps = ivp.inner_steps;
  s.y0 = ivp.y0;
  if (ivp.inner_steps < 1 || !(ivp.b > ivp.a)) {
    throw InvalidArgument("solve_linear_ivp: need b > a and inner_steps >= 1");
  }
  const int n = s.layout.samples();
  s.forcing = Matrix::Zero(ivp.y0.size(), n);
  for (int k = 0; k < n; ++k) {
    const double t = s.layout.time(s.a, s.b, k);
    s.coefficient.push_back(ivp.coefficient(t));
    if (ivp.forcing) {
      s.forcing.col(k) = ivp.forcing(t);
    }
  }
  return solve_linear_ivp(s);
}

Matrix FundamentalMatrix::cauchy_matrix(int k, int l) const {
  const Matrix& ul = samples.at(static_cast<std::size_t>(l));
  return samples.at(static_cast<std::size_t>(k)) * ul.inverse();
}

double FundamentalMatrix::min_abs_determinant() const {
  double best = INFINITY;
  for (const Matrix& u : samples) {
    best = std::min(best, std::abs(u.determinant()));
  }
  return best;
}

FundamentalMatrix fundamental_matrix(double a, double b, const std::vector<Matrix>& coefficient,
                                     InnerLayout layout) {
  if (coefficient.empty()) {
    throw InvalidArgument("fundamental_matrix: empty coefficient list");
  }
  const Eigen::Index dim = coefficient.front().rows();
  FundamentalMatrix fm;
  fm.a = a;
  fm.b = b;
  fm.layout = layout;
  fm.samples.assign(static_cast<std::size_t>(layout.samples()), Matrix::Zero(dim, dim));
  SampledLinearIVP ivp;
  ivp.a = a;
  ivp.b = b;
  ivp.layout = layout;
  ivp.coefficient = coefficient;
  ivp.forcing = Matrix::Zero(dim, layout.samples());
  for (Eigen::Index c = 0; c < dim; ++c) {
    ivp.y0 = Vector::Unit(dim, c);
    const Matrix col = solve_linear_ivp(ivp);
    for (int k = 0; k < layout.samples(); ++k) {
      fm.samples[static_cast<std::size_t>(k)].col(c) = col.col(k);
    }
  }
  return fm;
}

FundamentalMatrix fundamental_matrix(double a, double b, const std::function<Matrix(double)>& coefficient,
                                     int inner_steps) {
  if (inner_steps < 1 || !(b > a)) {
    throw InvalidArgument("fundamental_matrix: need b > a and inner_steps >= 1");
  }
  InnerLayout layout{inner_steps};
  std::vector<Matrix> samples;
  for (int k = 0; k < layout.samples(); ++k) {
    samples.push_back(coefficient(layout.time(a, b, k)));
  }
  return fundamental_matrix(a, b, samples, layout);
}

// ---------------------------------------------------------------------------
// Dormand-Prince 5(4)

namespace {

constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// b - b_hat
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

double error_norm(const Vector& err, const Vector& y, const Vector& y_new, double tol) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < err.size(); ++i) {
    const double sc = tol + tol * std::max(std::abs(y(i)), std::abs(y_new(i)));
    const double r = err(i) / sc;
    acc += r * r;
  }
  return std::sqrt(acc / static_cast<double>(err.size()));
}

}  // namespace

std::vector<Vector> dopri5(const Rhs& f, double t0, const Vector& y0, const std::vector<double>& times,
                           double tol, Dopri5Stats* stats) {
  if (!(tol > 0.0)) {
    throw InvalidArgument("dopri5: tol must be positive");
  }
  if (!std::is_sorted(times.begin(), times.end()) || (!times.empty() && times.front() < t0)) {
    throw InvalidArgument("dopri5: output times must be sorted and >= t0");
  }
  std::vector<Vector> out;
  out.reserve(times.size());
  if (times.empty()) {
    return out;
  }
  const double span = times.back() - t0;
  double t = t0;
  Vector y = y0;
  Vector k1 = f(t, y);
  // Initial step: h ~ 0.01 * |y| / |y'|, scaled to the tolerance.
  double h;
  {
    const double d0 = y.norm();
    const double d1 = k1.norm();
    h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h = std::min(h * std::pow(tol / 1e-6, 0.2), span > 0 ? span : 1.0);
    h = std::max(h, 1e-12 * std::max(1.0, std::abs(t0)));
  }
  Dopri5Stats local;
  std::size_t next = 0;
  while (next < times.size() && times[next] == t) {
    out.push_back(y);
    ++next;
  }
  const long max_steps = 50'000'000;
  while (next < times.size()) {
    const double target = times[next];
    bool clipped = false;
    double step = h;
    if (t + step >= target) {
      step = target - t;
      clipped = true;
    }
    if (step < 1e-14 * std::max(1.0, std::abs(t))) {
      throw NumericalFailure("linode", "step size underflow near t = " + format_real(t) +
                                           " (problem may be stiff)");
    }
    const Vector k2 = f(t + c2 * step, y + step * (a21 * k1));
    const Vector k3 = f(t + c3 * step, y + step * (a31 * k1 + a32 * k2));
    const Vector k4 = f(t + c4 * step, y + step * (a41 * k1 + a42 * k2 + a43 * k3));
    const Vector k5 = f(t + c5 * step, y + step * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Vector k6 = f(t + step, y + step * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Vector y_new = y + step * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Vector k7 = f(t + step, y_new);
    const Vector err = step * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double en = all_finite(y_new) ? error_norm(err, y, y_new, tol) : INFINITY;
    if (en <= 1.0) {
      t = clipped ? target : t + step;
      y = y_new;
      k1 = k7;
      ++local.accepted;
      while (next < times.size() && times[next] == t) {
        out.push_back(y);
        ++next;
      }
      const double fac = en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
      // A clipped step says nothing about the natural step size.
      h = clipped ? std::max(h, step * fac) : step * fac;
    } else {
      ++local.rejected;
      if (!std::isfinite(en) && step < 1e-10) {
        throw NumericalFailure("linode", "non-finite state near t = " + format_real(t));
      }
      h = step * (std::isfinite(en) ? std::max(0.2, 0.9 * std::pow(en, -0.2)) : 0.1);
    }
    if (local.accepted + local.rejected > max_steps) {
      throw NumericalFailure("linode", "step budget exhausted near t = " + format_real(t));
    }
  }
  if (stats != nullptr) {
    *stats = local;
  }
  return out;
}

PiecewiseTrajectory reference_solve(const Rhs& f, const Vector& y0, const Grid& grid,
                                    InnerLayout layout, double tol) {
  std::vector<double> times;
  times.push_back(grid.t0());
  for (std::size_t i = 0; i < grid.interval_count(); ++i) {
    for (int k = 1; k < layout.samples(); ++k) {
      times.push_back(layout.time(grid.left(i), grid.right(i), k));
    }
  }
  const std::vector<Vector> values = dopri5(f, grid.t0(), y0, times, tol);
  std::vector<Matrix> blocks;
  std::size_t idx = 0;
  for (std::size_t i = 0; i < grid.interval_count(); ++i) {
    Matrix block(y0.size(), layout.samples());
    for (int k = 0; k < layout.samples(); ++k) {
      block.col(k) = values[idx + static_cast<std::size_t>(k)];
    }
    idx += static_cast<std::size_t>(layout.samples()) - 1;
    blocks.push_back(std::move(block));
  }
  return PiecewiseTrajectory(grid, static_cast<int>(y0.size()), layout, std::move(blocks));
}

PiecewiseTrajectory reference_solve(const ProblemSpec& spec, const Grid& grid, InnerLayout layout,
                                    double tol) {
  if (!(tol >= 1e-12 && tol <= 1e-3)) {
    throw InvalidArgument("reference_solve: tol must lie in [1e-12, 1e-3]");
  }
  if (grid.t0() != spec.t0) {
    throw InvalidArgument("reference_solve: grid must start at the problem's t0");
  }
  const Rhs f = [&spec](double t, const Vector& u) -> Vector {
    if (!all_finite(u)) {
      return Vector::Constant(u.size(), NAN);
    }
    return eval_N(spec, t, u) * u + eval_phi(spec, t);
  };
  return reference_solve(f, spec.u0, grid, layout, tol);
}

}  // namespace fdode
