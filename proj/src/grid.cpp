#include "fdode/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fdode/errors.hpp"

namespace fdode {

Grid::Grid(double t0, std::vector<double> nodes) : t0_(t0), nodes_(std::move(nodes)), h_max_(0.0) {
  if (!std::isfinite(t0_)) {
    throw InvalidArgument("Grid: t0 must be finite");
  }
  if (nodes_.empty()) {
    throw InvalidArgument("Grid: at least one node is required");
  }
  double prev = t0_;
  for (double node : nodes_) {
    if (!std::isfinite(node) || !(node > prev)) {
      throw InvalidArgument("Grid: nodes must be finite and strictly increasing after t0");
    }
    h_max_ = std::max(h_max_, node - prev);
    prev = node;
  }
}

double Grid::left(std::size_t i) const {
  if (i >= nodes_.size()) {
    throw OutOfRange("Grid: interval index " + std::to_string(i) + " out of range");
  }
  return i == 0 ? t0_ : nodes_[i - 1];
}

double Grid::right(std::size_t i) const {
  if (i >= nodes_.size()) {
    throw OutOfRange("Grid: interval index " + std::to_string(i) + " out of range");
  }
  return nodes_[i];
}

std::size_t Grid::locate(double t) const {
  if (!(t >= t0_ && t <= nodes_.back())) {
    throw OutOfRange("Grid: t = " + std::to_string(t) + " outside [" + std::to_string(t0_) +
                     ", " + std::to_string(nodes_.back()) + "]");
  }
  const auto it = std::lower_bound(nodes_.begin(), nodes_.end(), t);
  return static_cast<std::size_t>(it - nodes_.begin());
}

Grid make_uniform_grid(double t0, double t_end, double h) {
  if (!std::isfinite(h) || !(h > 0.0)) {
    throw InvalidArgument("make_uniform_grid: step must be finite and positive");
  }
  if (!std::isfinite(t0) || !std::isfinite(t_end) || !(t_end > t0)) {
    throw InvalidArgument("make_uniform_grid: need finite t_end > t0");
  }
  const double ratio = (t_end - t0) / h;
  const double nearest = std::round(ratio);
  std::size_t count = 0;
  if (nearest >= 1.0 && std::abs(ratio - nearest) <= 1e-9 * nearest) {
    count = static_cast<std::size_t>(nearest);
  } else {
    count = static_cast<std::size_t>(std::ceil(ratio));
  }
  std::vector<double> nodes;
  nodes.reserve(count);
  for (std::size_t k = 1; k < count; ++k) {
    nodes.push_back(t0 + static_cast<double>(k) * h);
  }
  nodes.push_back(t_end);
  return Grid(t0, std::move(nodes));
}

double InnerLayout::time(double a, double b, int k) const noexcept {
  const int last = 2 * inner_steps;
  if (k == last) {
    return b;
  }
  return a + (b - a) * static_cast<double>(k) / static_cast<double>(last);
}

}  // namespace fdode
