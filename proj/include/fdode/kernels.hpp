#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "fdode/linalg.hpp"
#include "fdode/problem.hpp"

namespace fdode {

/// Everything F^(j) needs on one interval.
struct ForcingInput {
  const ProblemSpec* spec = nullptr;
  int j = 1;
  /// Term coefficients at each layout sample.
  const std::vector<std::vector<Matrix>>* coeffs = nullptr;
  /// u^(0..j-1)(t_{i-1}).
  std::vector<Vector> left;
  /// Sample blocks of u^(0..j-1) on the interval (dim x samples each).
  std::vector<const Matrix*> blocks;
};

/// F^(j) at one sample.
Vector forcing_at_sample(const ForcingInput& in, int k);

/// dim x samples block of F^(j). The OpenMP version splits samples across
/// threads; each column is computed by the same code as the serial reference,
/// so the two agree bitwise.
Matrix assemble_forcing(const ForcingInput& in);
Matrix assemble_forcing_ref(const ForcingInput& in);

struct ScanResult {
  double value;
  std::size_t index;
};

/// max_i f(i) over i < n, ties to the lowest index. f must be safe to call
/// concurrently. Values are stored per index and reduced serially.
ScanResult max_scan(std::size_t n, const std::function<double(std::size_t)>& f);
ScanResult max_scan_ref(std::size_t n, const std::function<double(std::size_t)>& f);

/// Threads the OpenMP kernels will use (1 without OpenMP).
int kernel_threads();

}  // namespace fdode
