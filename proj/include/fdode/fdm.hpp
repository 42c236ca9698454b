#pragma once

#include <optional>
#include <vector>

#include "fdode/grid.hpp"
#include "fdode/problem.hpp"
#include "fdode/trajectory.hpp"

namespace fdode {

inline constexpr int kMaxRank = 16;

struct FdRunConfig {
  int rank = 0;
  Grid grid;
  int inner_steps = 16;
};

/// Terms u^(0..p) of the series on one shared layout.
struct SeriesSolution {
  std::vector<PiecewiseTrajectory> terms;

  int rank() const { return static_cast<int>(terms.size()) - 1; }
};

/// Base problem: on each interval N is frozen at the left value of u^(0).
PiecewiseTrajectory solve_base(const ProblemSpec& spec, const Grid& grid, int inner_steps = 16);

/// Matrix with columns dN/du_p(t, a) b.
Matrix upsilon(const ProblemSpec& spec, double t, const Vector& a, const Vector& b);
Matrix upsilon(const ProblemSpec& spec, const std::vector<Matrix>& coeffs, const Vector& a,
               const Vector& b);

/// F^(j) on interval i (0-based) at every layout sample, from u^(0..j-1).
Matrix assemble_F(const ProblemSpec& spec, const std::vector<PiecewiseTrajectory>& prior, int j,
                  std::size_t interval);

/// u^(j), given u^(0..j-1).
PiecewiseTrajectory solve_correction(const ProblemSpec& spec, const Grid& grid,
                                     const std::vector<PiecewiseTrajectory>& prior, int j,
                                     int inner_steps = 16);

/// Base solve then corrections 1..rank (rank <= kMaxRank).
SeriesSolution fd_solve(const ProblemSpec& spec, const FdRunConfig& config);

/// u^(0) + ... + u^(q).
PiecewiseTrajectory partial_sum(const SeriesSolution& sol, int q);

/// max over samples of |u' - N(t,u) u - phi(t)|, u' by fourth-order finite
/// differences within each interval. Needs inner_steps >= 2.
double residual(const ProblemSpec& spec, const PiecewiseTrajectory& traj);

/// max over samples of |traj - exact|; empty without an exact solution.
std::optional<double> error_vs_exact(const ProblemSpec& spec, const PiecewiseTrajectory& traj);

/// exp of the least-squares slope of log(errors[p]) against p.
double empirical_rate(const std::vector<double>& errors);

}  // namespace fdode
