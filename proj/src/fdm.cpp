#include "fdode/fdm.hpp"

#include <cmath>
#include <string>

#include "fdode/errors.hpp"
#include "fdode/kernels.hpp"
#include "fdode/linode.hpp"

namespace fdode {

namespace {

using CoeffTable = std::vector<std::vector<Matrix>>;  // [sample][term]

CoeffTable coefficient_table(const ProblemSpec& spec, const Grid& grid, InnerLayout layout,
                             std::size_t interval) {
  CoeffTable table;
  const double a = grid.left(interval);
  const double b = grid.right(interval);
  for (int k = 0; k < layout.samples(); ++k) {
    table.push_back(coefficients_at(spec, layout.time(a, b, k)));
  }
  return table;
}

void check_grid(const ProblemSpec& spec, const Grid& grid, int inner_steps) {
  spec.validate();
  if (grid.t0() != spec.t0) {
    throw InvalidArgument("fdm: grid must start at the problem's t0");
  }
  if (inner_steps < 1) {
    throw InvalidArgument("fdm: inner_steps must be >= 1");
  }
}

Matrix solve_interval(const SampledLinearIVP& ivp, std::size_t interval, int j) {
  try {
    return solve_linear_ivp(ivp);
  } catch (const NumericalFailure& e) {
    throw NumericalFailure("linode", std::string(e.what()) + " (interval " +
                                         std::to_string(interval + 1) + ", term " +
                                         std::to_string(j) + ")");
  }
}

PiecewiseTrajectory base_impl(const ProblemSpec& spec, const Grid& grid, InnerLayout layout,
                              const std::vector<CoeffTable>& tables) {
  std::vector<Matrix> blocks;
  Vector c = spec.u0;
  for (std::size_t i = 0; i < grid.interval_count(); ++i) {
    const double a = grid.left(i);
    const double b = grid.right(i);
    SampledLinearIVP ivp;
    ivp.a = a;
    ivp.b = b;
    ivp.layout = layout;
    ivp.y0 = c;
    ivp.forcing.resize(spec.dim, layout.samples());
    for (int k = 0; k < layout.samples(); ++k) {
      ivp.coefficient.push_back(eval_N(spec, tables[i][static_cast<std::size_t>(k)], c));
      ivp.forcing.col(k) = eval_phi(spec, layout.time(a, b, k));
    }
    blocks.push_back(solve_interval(ivp, i, 0));
    c = blocks.back().col(layout.samples() - 1);
  }
  return PiecewiseTrajectory(grid, spec.dim, layout, std::move(blocks));
}

Matrix forcing_impl(const ProblemSpec& spec, const std::vector<PiecewiseTrajectory>& prior, int j,
                    std::size_t interval, const CoeffTable& table) {
  ForcingInput in;
  in.spec = &spec;
  in.j = j;
  in.coeffs = &table;
  for (int p = 0; p < j; ++p) {
    const PiecewiseTrajectory& term = prior[static_cast<std::size_t>(p)];
    in.left.push_back(term.left_value(interval));
    in.blocks.push_back(&term.block(interval));
  }
  return assemble_forcing(in);
}

void check_prior(const std::vector<PiecewiseTrajectory>& prior, int j, const Grid& grid, int dim,
                 int inner_steps) {
  if (j < 1 || prior.size() != static_cast<std::size_t>(j)) {
    throw InvalidArgument("fdm: need exactly j prior terms for correction j");
  }
  for (const PiecewiseTrajectory& term : prior) {
    if (!term.same_layout(prior.front()) || !(term.grid() == grid) || term.dim() != dim ||
        term.layout().inner_steps != inner_steps) {
      throw InvalidArgument("fdm: prior terms have inconsistent layouts");
    }
  }
}

PiecewiseTrajectory correction_impl(const ProblemSpec& spec, const Grid& grid, InnerLayout layout,
                                    const std::vector<PiecewiseTrajectory>& prior, int j,
                                    const std::vector<CoeffTable>& tables) {
  const PiecewiseTrajectory& base = prior.front();
  std::vector<Matrix> blocks;
  Vector y = Vector::Zero(spec.dim);
  for (std::size_t i = 0; i < grid.interval_count(); ++i) {
    const CoeffTable& table = tables[i];
    const Vector c0 = base.left_value(i);
    const Matrix f = forcing_impl(spec, prior, j, i, table);
    SampledLinearIVP ivp;
    ivp.a = grid.left(i);
    ivp.b = grid.right(i);
    ivp.layout = layout;
    ivp.y0 = y;
    ivp.forcing.resize(spec.dim, layout.samples());
    for (int k = 0; k < layout.samples(); ++k) {
      const auto& coeffs = table[static_cast<std::size_t>(k)];
      ivp.coefficient.push_back(eval_N(spec, coeffs, c0));
      ivp.forcing.col(k) = upsilon(spec, coeffs, c0, base.block(i).col(k)) * y + f.col(k);
    }
    blocks.push_back(solve_interval(ivp, i, j));
    y = blocks.back().col(layout.samples() - 1);
  }
  return PiecewiseTrajectory(grid, spec.dim, layout, std::move(blocks));
}

std::vector<CoeffTable> all_tables(const ProblemSpec& spec, const Grid& grid, InnerLayout layout) {
  std::vector<CoeffTable> tables;
  for (std::size_t i = 0; i < grid.interval_count(); ++i) {
    tables.push_back(coefficient_table(spec, grid, layout, i));
  }
  return tables;
}

}  // namespace

PiecewiseTrajectory solve_base(const ProblemSpec& spec, const Grid& grid, int inner_steps) {
  check_grid(spec, grid, inner_steps);
  const InnerLayout layout{inner_steps};
  return base_impl(spec, grid, layout, all_tables(spec, grid, layout));
}

Matrix upsilon(const ProblemSpec& spec, const std::vector<Matrix>& coeffs, const Vector& a,
               const Vector& b) {
  if (a.size() != spec.dim || b.size() != spec.dim) {
    throw InvalidArgument("upsilon: vectors must have length dim");
  }
  Matrix out(spec.dim, spec.dim);
  for (int p = 0; p < spec.dim; ++p) {
    out.col(p) = eval_dN(spec, coeffs, a, p) * b;
  }
  return out;
}

Matrix upsilon(const ProblemSpec& spec, double t, const Vector& a, const Vector& b) {
  return upsilon(spec, coefficients_at(spec, t), a, b);
}

Matrix assemble_F(const ProblemSpec& spec, const std::vector<PiecewiseTrajectory>& prior, int j,
                  std::size_t interval) {
  if (prior.empty()) {
    throw InvalidArgument("assemble_F: no prior terms");
  }
  const Grid& grid = prior.front().grid();
  check_prior(prior, j, grid, spec.dim, prior.front().layout().inner_steps);
  if (interval >= grid.interval_count()) {
    throw InvalidArgument("assemble_F: interval index out of range");
  }
  const CoeffTable table = coefficient_table(spec, grid, prior.front().layout(), interval);
  return forcing_impl(spec, prior, j, interval, table);
}

PiecewiseTrajectory solve_correction(const ProblemSpec& spec, const Grid& grid,
                                     const std::vector<PiecewiseTrajectory>& prior, int j,
                                     int inner_steps) {
  check_grid(spec, grid, inner_steps);
  check_prior(prior, j, grid, spec.dim, inner_steps);
  const InnerLayout layout{inner_steps};
  return correction_impl(spec, grid, layout, prior, j, all_tables(spec, grid, layout));
}

SeriesSolution fd_solve(const ProblemSpec& spec, const FdRunConfig& config) {
  check_grid(spec, config.grid, config.inner_steps);
  if (config.rank < 0 || config.rank > kMaxRank) {
    throw InvalidArgument("fd_solve: rank must lie in 0.." + std::to_string(kMaxRank));
  }
  const InnerLayout layout{config.inner_steps};
  const std::vector<CoeffTable> tables = all_tables(spec, config.grid, layout);
  SeriesSolution sol;
  sol.terms.push_back(base_impl(spec, config.grid, layout, tables));
  for (int j = 1; j <= config.rank; ++j) {
    sol.terms.push_back(correction_impl(spec, config.grid, layout, sol.terms, j, tables));
  }
  return sol;
}

PiecewiseTrajectory partial_sum(const SeriesSolution& sol, int q) {
  if (sol.terms.empty()) {
    throw InvalidArgument("partial_sum: empty series");
  }
  if (q < 0 || q > sol.rank()) {
    throw InvalidArgument("partial_sum: q must lie in 0..rank");
  }
  PiecewiseTrajectory acc = sol.terms.front();
  for (int p = 1; p <= q; ++p) {
    acc = acc + sol.terms[static_cast<std::size_t>(p)];
  }
  return acc;
}

double residual(const ProblemSpec& spec, const PiecewiseTrajectory& traj) {
  if (traj.dim() != spec.dim) {
    throw InvalidArgument("residual: dimension mismatch");
  }
  const InnerLayout layout = traj.layout();
  const int n = layout.samples();
  if (n < 5) {
    throw InvalidArgument("residual: need at least 5 samples per interval");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < traj.interval_count(); ++i) {
    const Matrix& y = traj.block(i);
    const double a = traj.grid().left(i);
    const double b = traj.grid().right(i);
    const double d = layout.spacing(a, b);
    for (int k = 0; k < n; ++k) {
      Vector du;
      if (k == 0) {
        du = (-25.0 * y.col(0) + 48.0 * y.col(1) - 36.0 * y.col(2) + 16.0 * y.col(3) - 3.0 * y.col(4)) /
             (12.0 * d);
      } else if (k == 1) {
        du = (-3.0 * y.col(0) - 10.0 * y.col(1) + 18.0 * y.col(2) - 6.0 * y.col(3) + y.col(4)) /
             (12.0 * d);
      } else if (k == n - 2) {
        du = (3.0 * y.col(n - 1) + 10.0 * y.col(n - 2) - 18.0 * y.col(n - 3) + 6.0 * y.col(n - 4) -
              y.col(n - 5)) /
             (12.0 * d);
      } else if (k == n - 1) {
        du = (25.0 * y.col(n - 1) - 48.0 * y.col(n - 2) + 36.0 * y.col(n - 3) - 16.0 * y.col(n - 4) +
              3.0 * y.col(n - 5)) /
             (12.0 * d);
      } else {
        du = (-y.col(k + 2) + 8.0 * y.col(k + 1) - 8.0 * y.col(k - 1) + y.col(k - 2)) / (12.0 * d);
      }
      const double t = layout.time(a, b, k);
      const Vector u = y.col(k);
      const Vector r = du - eval_N(spec, t, u) * u - eval_phi(spec, t);
      worst = std::max(worst, r.norm());
    }
  }
  return worst;
}

std::optional<double> error_vs_exact(const ProblemSpec& spec, const PiecewiseTrajectory& traj) {
  if (!spec.exact) {
    return std::nullopt;
  }
  if (traj.dim() != spec.dim) {
    throw InvalidArgument("error_vs_exact: dimension mismatch");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < traj.interval_count(); ++i) {
    for (int k = 0; k < traj.layout().samples(); ++k) {
      const Vector e = traj.block(i).col(k) - *eval_exact(spec, traj.sample_time(i, k));
      worst = std::max(worst, e.norm());
    }
  }
  return worst;
}

double empirical_rate(const std::vector<double>& errors) {
  if (errors.size() < 3) {
    throw InvalidArgument("empirical_rate: need at least 3 errors");
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(errors.size());
  for (std::size_t p = 0; p < errors.size(); ++p) {
    if (!(errors[p] > 0.0) || !std::isfinite(errors[p])) {
      throw InvalidArgument("empirical_rate: errors must be positive and finite");
    }
    const double x = static_cast<double>(p);
    const double y = std::log(errors[p]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return std::exp(slope);
}

}  // namespace fdode
