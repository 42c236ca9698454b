#include "fdode/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fdode/errors.hpp"

namespace fdode {

PiecewiseTrajectory::PiecewiseTrajectory(Grid grid, int dim, InnerLayout layout,
                                         std::vector<Matrix> blocks)
    : grid_(std::move(grid)), dim_(dim), layout_(layout), blocks_(std::move(blocks)) {
  if (dim_ <= 0) {
    throw InvalidArgument("PiecewiseTrajectory: dim must be positive");
  }
  if (layout_.inner_steps < 1) {
    throw InvalidArgument("PiecewiseTrajectory: inner_steps must be >= 1");
  }
  if (blocks_.size() != grid_.interval_count()) {
    throw InvalidArgument("PiecewiseTrajectory: one block per grid interval required");
  }
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const Matrix& b = blocks_[i];
    if (b.rows() != dim_ || b.cols() != layout_.samples()) {
      throw InvalidArgument("PiecewiseTrajectory: block " + std::to_string(i) +
                            " has the wrong shape");
    }
    if (i > 0 && blocks_[i - 1].col(blocks_[i - 1].cols() - 1) != b.col(0)) {
      throw InvalidArgument("PiecewiseTrajectory: junction at node " + std::to_string(i) +
                            " is not shared");
    }
  }
}

double PiecewiseTrajectory::sample_time(std::size_t interval, int k) const {
  return layout_.time(grid_.left(interval), grid_.right(interval), k);
}

bool PiecewiseTrajectory::same_layout(const PiecewiseTrajectory& other) const noexcept {
  return dim_ == other.dim_ && layout_.inner_steps == other.layout_.inner_steps &&
         grid_ == other.grid_;
}

PiecewiseTrajectory sample_function(const Grid& grid, int dim, InnerLayout layout,
                                    const std::function<Vector(double)>& fn) {
  std::vector<Matrix> blocks;
  blocks.reserve(grid.interval_count());
  for (std::size_t i = 0; i < grid.interval_count(); ++i) {
    const double a = grid.left(i);
    const double b = grid.right(i);
    Matrix block(dim, layout.samples());
    for (int k = 0; k < layout.samples(); ++k) {
      if (i > 0 && k == 0) {
        block.col(0) = blocks.back().col(blocks.back().cols() - 1);
        continue;
      }
      const Vector v = fn(layout.time(a, b, k));
      if (v.size() != dim) {
        throw InvalidArgument("sample_function: function returned wrong dimension");
      }
      block.col(k) = v;
    }
    blocks.push_back(std::move(block));
  }
  return PiecewiseTrajectory(grid, dim, layout, std::move(blocks));
}

PiecewiseTrajectory zero_trajectory(const Grid& grid, int dim, InnerLayout layout) {
  std::vector<Matrix> blocks(grid.interval_count(), Matrix::Zero(dim, layout.samples()));
  return PiecewiseTrajectory(grid, dim, layout, std::move(blocks));
}

namespace {

template <typename Op>
PiecewiseTrajectory combine(const PiecewiseTrajectory& a, const PiecewiseTrajectory& b, Op op) {
  if (!a.same_layout(b)) {
    throw InvalidArgument("trajectory arithmetic: layouts differ");
  }
  std::vector<Matrix> blocks;
  blocks.reserve(a.interval_count());
  for (std::size_t i = 0; i < a.interval_count(); ++i) {
    blocks.push_back(op(a.block(i), b.block(i)));
  }
  return PiecewiseTrajectory(a.grid(), a.dim(), a.layout(), std::move(blocks));
}

// Slope at sample k of a block with spacing d: central difference inside,
// second-order one-sided at the block ends.
Vector fd_slope(const Matrix& block, int k, double d) {
  const int last = static_cast<int>(block.cols()) - 1;
  if (last == 0) {
    return Vector::Zero(block.rows());
  }
  if (last == 1) {
    return (block.col(1) - block.col(0)) / d;
  }
  if (k == 0) {
    return (-3.0 * block.col(0) + 4.0 * block.col(1) - block.col(2)) / (2.0 * d);
  }
  if (k == last) {
    return (3.0 * block.col(last) - 4.0 * block.col(last - 1) + block.col(last - 2)) / (2.0 * d);
  }
  return (block.col(k + 1) - block.col(k - 1)) / (2.0 * d);
}

}  // namespace

PiecewiseTrajectory operator+(const PiecewiseTrajectory& a, const PiecewiseTrajectory& b) {
  return combine(a, b, [](const Matrix& x, const Matrix& y) -> Matrix { return x + y; });
}

PiecewiseTrajectory operator-(const PiecewiseTrajectory& a, const PiecewiseTrajectory& b) {
  return combine(a, b, [](const Matrix& x, const Matrix& y) -> Matrix { return x - y; });
}

Vector trajectory_eval(const PiecewiseTrajectory& traj, double t) {
  const Grid& grid = traj.grid();
  const std::size_t i = grid.locate(t);
  const double a = grid.left(i);
  const double b = grid.right(i);
  const Matrix& block = traj.block(i);
  if (t == b) {
    return block.col(block.cols() - 1);
  }
  const InnerLayout& layout = traj.layout();
  const double d = layout.spacing(a, b);
  const int last = layout.samples() - 1;
  int k = static_cast<int>(std::floor((t - a) / d));
  k = std::clamp(k, 0, last - 1);
  // Rounding can put t just below sample k's stored time.
  if (k > 0 && t < layout.time(a, b, k)) {
    --k;
  }
  const double tk = layout.time(a, b, k);
  if (t == tk) {
    return block.col(k);
  }
  const double tk1 = layout.time(a, b, k + 1);
  if (t == tk1) {
    return block.col(k + 1);
  }
  const double step = tk1 - tk;
  const double s = (t - tk) / step;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
  const double h10 = s3 - 2.0 * s2 + s;
  const double h01 = -2.0 * s3 + 3.0 * s2;
  const double h11 = s3 - s2;
  return h00 * block.col(k) + h10 * step * fd_slope(block, k, d) + h01 * block.col(k + 1) +
         h11 * step * fd_slope(block, k + 1, d);
}

double trajectory_sup_norm(const PiecewiseTrajectory& traj, NormMode mode,
                           std::optional<TimeWindow> window) {
  if (window && !(window->b >= window->a)) {
    throw InvalidArgument("trajectory_sup_norm: empty window");
  }
  const auto inside = [&](double t) { return !window || (t >= window->a && t <= window->b); };
  double best = 0.0;
  bool any = false;
  for (std::size_t i = 0; i < traj.interval_count(); ++i) {
    const Matrix& block = traj.block(i);
    const double d = traj.layout().spacing(traj.grid().left(i), traj.grid().right(i));
    for (int k = 0; k < block.cols(); ++k) {
      const double tk = traj.sample_time(i, k);
      if (mode == NormMode::value) {
        if (inside(tk)) {
          best = std::max(best, block.col(k).norm());
          any = true;
        }
      } else if (k + 1 < block.cols() && inside(tk) && inside(traj.sample_time(i, k + 1))) {
        best = std::max(best, (block.col(k + 1) - block.col(k)).norm() / d);
        any = true;
      }
    }
  }
  if (!any) {
    throw InvalidArgument("trajectory_sup_norm: window contains no samples");
  }
  return best;
}

}  // namespace fdode
