#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fdode {

/// Outer grid t0 < t_1 < ... < t_n on the truncated interval [t0, t_n].
class Grid {
 public:
  /// Throws InvalidArgument unless nodes are strictly increasing and nodes[0] > t0.
  Grid(double t0, std::vector<double> nodes);

  double t0() const noexcept { return t0_; }
  double t_end() const noexcept { return nodes_.back(); }
  double h_max() const noexcept { return h_max_; }
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  std::size_t interval_count() const noexcept { return nodes_.size(); }

  /// Left end of interval i (0-based): t0 for i = 0, otherwise nodes[i-1].
  double left(std::size_t i) const;
  double right(std::size_t i) const;

  /// Index of the interval containing t; a node belongs to the interval on its left,
  /// except t0 which belongs to interval 0. Throws OutOfRange outside [t0, t_end].
  std::size_t locate(double t) const;

  bool operator==(const Grid&) const = default;

 private:
  double t0_;
  std::vector<double> nodes_;
  double h_max_;
};

/// Nodes t0+h, t0+2h, ... with the last node exactly t_end (shortened final step
/// when (t_end - t0)/h is not integral).
Grid make_uniform_grid(double t0, double t_end, double h);

/// Sample layout inside one interval: 2M+1 uniform points, endpoints and step midpoints.
struct InnerLayout {
  int inner_steps = 16;

  int samples() const noexcept { return 2 * inner_steps + 1; }
  /// Time of sample k in [a, b]; sample 2M is exactly b.
  double time(double a, double b, int k) const noexcept;
  double spacing(double a, double b) const noexcept { return (b - a) / (2.0 * inner_steps); }
};

}  // namespace fdode
