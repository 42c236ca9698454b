#include <doctest.h>

#include <cmath>
#include <random>

#include "fdode/errors.hpp"
#include "fdode/linode.hpp"
#include "fdode/problem.hpp"
#include "support/fixtures.hpp"

using namespace fdode;

namespace {

Matrix rotation(double) {
  Matrix m(2, 2);
  m << 0, 1, -1, 0;
  return m;
}

// Smooth, non-autonomous, non-commuting test system.
Matrix manufactured(double t) {
  Matrix m(2, 2);
  m << -0.3, 1.0 + 0.2 * t, -1.0 - 0.5 * std::sin(t), -0.2;
  return m;
}

Vector manufactured_forcing(double t) {
  Vector g(2);
  g << std::cos(t), std::exp(-t);
  return g;
}

double sup_exact_error(const PiecewiseTrajectory& traj, const ProblemSpec& spec) {
  double worst = 0.0;
  for (std::size_t i = 0; i < traj.interval_count(); ++i) {
    for (int k = 0; k < traj.layout().samples(); ++k) {
      worst = std::max(worst, (traj.sample(i, k) - *eval_exact(spec, traj.sample_time(i, k))).norm());
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("zero system keeps a constant") {
  Vector c(3);
  c << 1.5, -2.0, 0.25;
  const LinearIVP ivp{0.0, 2.0, [](double) { return Matrix::Zero(3, 3); }, {}, c, 8};
  const Matrix y = solve_linear_ivp(ivp);
  REQUIRE(y.cols() == 17);
  for (int k = 0; k < y.cols(); ++k) {
    CHECK((y.col(k) - c).norm() == 0.0);
  }
}

TEST_CASE("exponential decay") {
  Vector y0(2);
  y0 << 1, 0;
  const LinearIVP ivp{0.0, 1.0, [](double) { return Matrix(-Matrix::Identity(2, 2)); }, {}, y0, 16};
  const Matrix y = solve_linear_ivp(ivp);
  CHECK(std::abs(y(0, 32) - std::exp(-1.0)) <= 1e-7);
  CHECK(y(1, 32) == 0.0);
  CHECK(std::abs(y(0, 1) - std::exp(-1.0 / 32)) <= 1e-7);
}

TEST_CASE("rotation gives sin and cos") {
  Vector y0(2);
  y0 << 0, 1;
  const Matrix y = solve_linear_ivp(LinearIVP{0.0, 1.0, rotation, {}, y0, 32});
  CHECK(std::abs(y(0, 64) - std::sin(1.0)) <= 1e-7);
  CHECK(std::abs(y(1, 64) - std::cos(1.0)) <= 1e-7);
  for (int k = 0; k <= 64; ++k) {
    const double t = k / 64.0;
    CHECK(std::abs(y(0, k) - std::sin(t)) <= 1e-7);
  }
}

TEST_CASE("sampled and evaluable forms agree") {
  const InnerLayout layout{8};
  SampledLinearIVP sampled;
  sampled.a = 0.5;
  sampled.b = 1.25;
  sampled.layout = layout;
  sampled.forcing = Matrix(2, layout.samples());
  for (int k = 0; k < layout.samples(); ++k) {
    const double t = layout.time(0.5, 1.25, k);
    sampled.coefficient.push_back(manufactured(t));
    sampled.forcing.col(k) = manufactured_forcing(t);
  }
  sampled.y0 = Vector::Ones(2);
  const Matrix a = solve_linear_ivp(sampled);
  const Matrix b = solve_linear_ivp(LinearIVP{0.5, 1.25, manufactured, manufactured_forcing, Vector::Ones(2), 8});
  CHECK((a - b).norm() <= 1e-14);
}

TEST_CASE("fourth-order convergence in the inner step") {
  const Rhs f = [](double t, const Vector& y) -> Vector { return manufactured(t) * y + manufactured_forcing(t); };
  Vector y0(2);
  y0 << 1.0, -0.5;
  const Vector ref = dopri5(f, 0.0, y0, {2.0}, 1e-14).back();
  std::vector<double> errors;
  for (int m : {4, 8, 16, 32}) {
    const Matrix y = solve_linear_ivp(LinearIVP{0.0, 2.0, manufactured, manufactured_forcing, y0, m});
    errors.push_back((y.col(y.cols() - 1) - ref).norm());
  }
  for (std::size_t k = 1; k < errors.size(); ++k) {
    const double ratio = errors[k - 1] / errors[k];
    CHECK(ratio >= 12.0);
    CHECK(ratio <= 20.0);
  }
}

TEST_CASE("midpoint samples are fourth-order accurate") {
  const Rhs f = [](double t, const Vector& y) -> Vector { return manufactured(t) * y + manufactured_forcing(t); };
  const Vector y0 = Vector::Ones(2);
  std::vector<double> errors;
  for (int m : {8, 16, 32}) {
    const InnerLayout layout{m};
    std::vector<double> times;
    for (int k = 1; k < layout.samples(); k += 2) {
      times.push_back(layout.time(0.0, 2.0, k));
    }
    const auto ref = dopri5(f, 0.0, y0, times, 1e-14);
    const Matrix y = solve_linear_ivp(LinearIVP{0.0, 2.0, manufactured, manufactured_forcing, y0, m});
    double worst = 0.0;
    for (std::size_t s = 0; s < times.size(); ++s) {
      worst = std::max(worst, (y.col(2 * s + 1) - ref[s]).norm());
    }
    errors.push_back(worst);
  }
  for (std::size_t k = 1; k < errors.size(); ++k) {
    CHECK(errors[k - 1] / errors[k] >= 12.0);
  }
}

TEST_CASE("blow-up is reported with its time") {
  const LinearIVP ivp{0.0, 1.0, [](double) { return Matrix(1e100 * Matrix::Identity(1, 1)); }, {}, Vector::Ones(1), 4};
  try {
    solve_linear_ivp(ivp);
    FAIL("expected a numerical failure");
  } catch (const NumericalFailure& e) {
    CHECK(e.module() == "linode");
    CHECK(std::string(e.what()).find("t = ") != std::string::npos);
  }
  CHECK_THROWS_AS(solve_linear_ivp(LinearIVP{1.0, 1.0, rotation, {}, Vector::Ones(2), 4}), InvalidArgument);
  CHECK_THROWS_AS(solve_linear_ivp(LinearIVP{0.0, 1.0, rotation, {}, Vector::Ones(2), 0}), InvalidArgument);
}

TEST_CASE("fundamental matrix examples") {
  const FundamentalMatrix zero = fundamental_matrix(0.0, 1.0, [](double) { return Matrix::Zero(2, 2); }, 8);
  for (const Matrix& u : zero.samples) {
    CHECK(u == Matrix::Identity(2, 2));
  }
  const FundamentalMatrix diag = fundamental_matrix(
      0.0, 1.0, [](double) { return Matrix(Vector::LinSpaced(2, -1.0, -2.0).asDiagonal()); }, 32);
  const Matrix& u1 = diag.samples.back();
  CHECK(std::abs(u1(0, 0) - std::exp(-1.0)) <= 1e-7);
  CHECK(std::abs(u1(1, 1) - std::exp(-2.0)) <= 1e-7);
  CHECK(u1(0, 1) == 0.0);
  CHECK(u1(1, 0) == 0.0);
}

TEST_CASE("fundamental matrix starts at the identity and stays invertible") {
  const FundamentalMatrix u = fundamental_matrix(0.0, 3.0, manufactured, 32);
  CHECK(u.samples.front() == Matrix::Identity(2, 2));
  CHECK(u.min_abs_determinant() > 0.0);
  // Liouville: det U(t) = exp(int tr M) = exp(-0.5 t)
  CHECK(std::abs(u.samples.back().determinant() - std::exp(-1.5)) <= 1e-5);
  const Matrix k = u.cauchy_matrix(20, 20);
  CHECK((k - Matrix::Identity(2, 2)).norm() <= 1e-12);
}

TEST_CASE("dissipative coefficient gives exponential decay") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double w = dist(rng), s = dist(rng);
    const double alpha = 0.5 + 0.1 * trial;
    // symmetric part is -alpha I, skew part time-dependent
    const auto m = [=](double t) {
      Matrix c(2, 2);
      c << -alpha, w + s * std::sin(t), -w - s * std::sin(t), -alpha;
      return c;
    };
    const FundamentalMatrix u = fundamental_matrix(0.0, 2.0, m, 32);
    for (int k = 0; k < u.layout.samples(); ++k) {
      const double t = u.layout.time(0.0, 2.0, k);
      // slack is a few RK4 global errors at this step size
      CHECK(spectral_norm(u.samples[k]) <= std::exp(-alpha * t) * (1 + 1e-4));
    }
  }
}

TEST_CASE("inverse growth bound") {
  const FundamentalMatrix u = fundamental_matrix(0.0, 1.0, manufactured, 16);
  double sup_m = 0.0;
  for (int k = 0; k < u.layout.samples(); ++k) {
    sup_m = std::max(sup_m, spectral_norm(manufactured(u.layout.time(0.0, 1.0, k))));
  }
  for (int k = 0; k < u.layout.samples(); ++k) {
    const double t = u.layout.time(0.0, 1.0, k);
    CHECK(spectral_norm(u.samples[k].inverse()) <= std::exp(t * sup_m) * (1 + 1e-6));
  }
}

TEST_CASE("dopri5 hits every output time") {
  const Rhs f = [](double, const Vector& y) -> Vector { return -y; };
  Dopri5Stats stats;
  const std::vector<double> times{0.0, 0.1, 0.5, 3.0};
  const auto y = dopri5(f, 0.0, Vector::Ones(1), times, 1e-10, &stats);
  REQUIRE(y.size() == times.size());
  CHECK(y[0](0) == 1.0);
  for (std::size_t k = 0; k < times.size(); ++k) {
    CHECK(std::abs(y[k](0) - std::exp(-times[k])) <= 1e-9);
  }
  CHECK(stats.accepted > 0);
  CHECK_THROWS_AS(dopri5(f, 0.0, Vector::Ones(1), {0.5, 0.1}, 1e-8), InvalidArgument);
}

TEST_CASE("dopri5 reports blow-up") {
  const Rhs f = [](double, const Vector& y) -> Vector { return y.cwiseProduct(y); };
  CHECK_THROWS_AS(dopri5(f, 0.0, Vector::Ones(1), {2.0}, 1e-8), NumericalFailure);
}

TEST_CASE("reference solve of a linear problem") {
  const ProblemSpec spec = *builtin_problem("linear_decay");
  const Grid grid = make_uniform_grid(0.0, 3.0, 0.5);
  const PiecewiseTrajectory traj = reference_solve(spec, grid, InnerLayout{8}, 1e-10);
  CHECK(sup_exact_error(traj, spec) <= 1e-9);
  CHECK_THROWS_AS(reference_solve(spec, grid, InnerLayout{8}, 1e-14), InvalidArgument);
  CHECK_THROWS_AS(reference_solve(spec, grid, InnerLayout{8}, 1e-2), InvalidArgument);
  CHECK_THROWS_AS(reference_solve(spec, make_uniform_grid(1.0, 3.0, 0.5), InnerLayout{8}, 1e-8), InvalidArgument);
}

TEST_CASE("reference solve of paper_example") {
  const ProblemSpec spec = *builtin_problem("paper_example");
  const Grid grid = make_uniform_grid(0.0, 6.0, 0.2);
  CHECK(sup_exact_error(reference_solve(spec, grid, InnerLayout{16}, 1e-10), spec) <= 1e-8);
}

TEST_CASE("tighter tolerance gives a smaller reference error") {
  const ProblemSpec spec = *builtin_problem("paper_example");
  const Grid grid = make_uniform_grid(0.0, 6.0, 0.5);
  double prev = INFINITY;
  for (double tol : {1e-4, 1e-6, 1e-8, 1e-10}) {
    const double err = sup_exact_error(reference_solve(spec, grid, InnerLayout{4}, tol), spec);
    CHECK(err < prev);
    prev = err;
  }
}
