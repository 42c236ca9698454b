#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "fdode/grid.hpp"
#include "fdode/linalg.hpp"

namespace fdode {

/// A vector-valued function of time stored as dense samples: for every grid
/// interval a dim x (2M+1) block whose column k is the value at
/// InnerLayout::time(a, b, k). Adjacent blocks share their junction column exactly.
class PiecewiseTrajectory {
 public:
  /// Throws InvalidArgument on shape mismatch or a junction that is not bitwise shared.
  PiecewiseTrajectory(Grid grid, int dim, InnerLayout layout, std::vector<Matrix> blocks);

  const Grid& grid() const noexcept { return grid_; }
  int dim() const noexcept { return dim_; }
  const InnerLayout& layout() const noexcept { return layout_; }
  std::size_t interval_count() const noexcept { return blocks_.size(); }
  const Matrix& block(std::size_t interval) const { return blocks_.at(interval); }
  const std::vector<Matrix>& blocks() const noexcept { return blocks_; }

  double sample_time(std::size_t interval, int k) const;
  Vector sample(std::size_t interval, int k) const { return blocks_.at(interval).col(k); }

  /// Value at the left end of an interval (u(t_{i-1})).
  Vector left_value(std::size_t interval) const { return sample(interval, 0); }
  Vector final_value() const { return blocks_.back().col(blocks_.back().cols() - 1); }

  /// True when both trajectories live on the same grid, dimension and inner layout.
  bool same_layout(const PiecewiseTrajectory& other) const noexcept;

 private:
  Grid grid_;
  int dim_;
  InnerLayout layout_;
  std::vector<Matrix> blocks_;
};

/// Samples fn at every layout point.
PiecewiseTrajectory sample_function(const Grid& grid, int dim, InnerLayout layout,
                                    const std::function<Vector(double)>& fn);

PiecewiseTrajectory zero_trajectory(const Grid& grid, int dim, InnerLayout layout);

/// Pointwise sum; layouts must match.
PiecewiseTrajectory operator+(const PiecewiseTrajectory& a, const PiecewiseTrajectory& b);
PiecewiseTrajectory operator-(const PiecewiseTrajectory& a, const PiecewiseTrajectory& b);

/// Dense output. Exact sample at layout points, cubic Hermite with
/// finite-difference slopes between them. Throws OutOfRange outside [t0, t_end].
Vector trajectory_eval(const PiecewiseTrajectory& traj, double t);

enum class NormMode { value, derivative };

struct TimeWindow {
  double a;
  double b;
};

/// Sup norm over stored samples: max Euclidean norm of the samples (value) or of
/// the forward differences between consecutive samples (derivative). A window
/// keeps samples with a <= t <= b. Throws InvalidArgument if the window holds no
/// sample (or no sub-step, for derivative mode).
double trajectory_sup_norm(const PiecewiseTrajectory& traj, NormMode mode,
                           std::optional<TimeWindow> window = std::nullopt);

}  // namespace fdode
