#include "fdode/kernels.hpp"

#include <cmath>
#include <exception>

#include "fdode/adomian.hpp"
#include "fdode/errors.hpp"

#ifdef FDODE_HAVE_OPENMP
#include <omp.h>
#endif

namespace fdode {

namespace {

[[maybe_unused]] void rethrow_first(const std::vector<std::exception_ptr>& errors) {
  for (const auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
}

void check_input(const ForcingInput& in) {
  if (in.spec == nullptr || in.coeffs == nullptr || in.j < 1) {
    throw InvalidArgument("assemble_forcing: incomplete input");
  }
  if (in.left.size() != static_cast<std::size_t>(in.j) ||
      in.blocks.size() != static_cast<std::size_t>(in.j)) {
    throw InvalidArgument("assemble_forcing: need exactly j prior terms");
  }
  const Eigen::Index cols = in.blocks.front()->cols();
  if (in.coeffs->size() != static_cast<std::size_t>(cols)) {
    throw InvalidArgument("assemble_forcing: coefficient table does not match the layout");
  }
  for (const Matrix* b : in.blocks) {
    if (b->cols() != cols || b->rows() != in.spec->dim) {
      throw InvalidArgument("assemble_forcing: prior terms have inconsistent layouts");
    }
  }
}

}  // namespace

Vector forcing_at_sample(const ForcingInput& in, int k) {
  const ProblemSpec& spec = *in.spec;
  const int j = in.j;
  const auto& coeffs = (*in.coeffs)[static_cast<std::size_t>(k)];

  std::vector<Vector> left_args(in.left.begin(), in.left.end());
  left_args.push_back(Vector::Zero(spec.dim));
  std::vector<Vector> cur(static_cast<std::size_t>(j));
  for (int p = 0; p < j; ++p) {
    cur[static_cast<std::size_t>(p)] = in.blocks[static_cast<std::size_t>(p)]->col(k);
  }
  // al[n] = A_n(left_0..left_n) for n < j, al[j] = A_j(left_0..left_{j-1}, 0);
  // ac[n] = A_n(cur_0..cur_n).
  const std::vector<Matrix> al = adomian_matrix(spec, coeffs, left_args);
  const std::vector<Matrix> ac = adomian_matrix(spec, coeffs, cur);

  Vector f = Vector::Zero(spec.dim);
  for (int p = 1; p < j; ++p) {
    f += al[static_cast<std::size_t>(j - p)] * cur[static_cast<std::size_t>(p)];
  }
  for (int p = 0; p < j; ++p) {
    const auto n = static_cast<std::size_t>(j - 1 - p);
    f += (ac[n] - al[n]) * cur[static_cast<std::size_t>(p)];
  }
  f += al[static_cast<std::size_t>(j)] * cur[0];
  return f;
}

Matrix assemble_forcing_ref(const ForcingInput& in) {
  check_input(in);
  const auto cols = static_cast<int>(in.blocks.front()->cols());
  Matrix out(in.spec->dim, cols);
  for (int k = 0; k < cols; ++k) {
    out.col(k) = forcing_at_sample(in, k);
  }
  return out;
}

Matrix assemble_forcing(const ForcingInput& in) {
#ifdef FDODE_HAVE_OPENMP
  check_input(in);
  const auto cols = static_cast<int>(in.blocks.front()->cols());
  Matrix out(in.spec->dim, cols);
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(cols));
#pragma omp parallel for schedule(static)
  for (int k = 0; k < cols; ++k) {
    try {
      out.col(k) = forcing_at_sample(in, k);
    } catch (...) {
      errors[static_cast<std::size_t>(k)] = std::current_exception();
    }
  }
  rethrow_first(errors);
  return out;
#else
  return assemble_forcing_ref(in);
#endif
}

namespace {

ScanResult reduce_max(const std::vector<double>& values) {
  ScanResult best{-INFINITY, 0};
  for (std::size_t i = 0; i < values.size(); ++i) {
    // NaN never wins; ties keep the earlier index.
    if (values[i] > best.value) {
      best = {values[i], i};
    }
  }
  return best;
}

}  // namespace

ScanResult max_scan_ref(std::size_t n, const std::function<double(std::size_t)>& f) {
  if (n == 0) {
    throw InvalidArgument("max_scan: nothing to scan");
  }
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    values[i] = f(i);
  }
  return reduce_max(values);
}

ScanResult max_scan(std::size_t n, const std::function<double(std::size_t)>& f) {
#ifdef FDODE_HAVE_OPENMP
  if (n == 0) {
    throw InvalidArgument("max_scan: nothing to scan");
  }
  std::vector<double> values(n);
  const auto count = static_cast<long long>(n);
  std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < count; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      values[idx] = f(idx);
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  }
  rethrow_first(errors);
  return reduce_max(values);
#else
  return max_scan_ref(n, f);
#endif
}

int kernel_threads() {
#ifdef FDODE_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace fdode
