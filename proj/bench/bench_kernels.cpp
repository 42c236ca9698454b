// OpenMP kernels against their serial references.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "fdode/fdm.hpp"
#include "fdode/hypotheses.hpp"
#include "fdode/kernels.hpp"
#include "fdode/problem.hpp"

using namespace fdode;

namespace {

struct Forcing {
  ProblemSpec spec = *builtin_problem("paper_example");
  SeriesSolution sol;
  std::vector<std::vector<Matrix>> coeffs;
  ForcingInput input;

  Forcing(int j, int inner) {
    const Grid grid = make_uniform_grid(0.0, 0.4, 0.2);
    sol = fd_solve(spec, FdRunConfig{j, grid, inner});
    const InnerLayout layout{inner};
    for (int k = 0; k < layout.samples(); ++k) {
      coeffs.push_back(coefficients_at(spec, layout.time(grid.left(1), grid.right(1), k)));
    }
    input.spec = &spec;
    input.j = j;
    input.coeffs = &coeffs;
    for (int p = 0; p < j; ++p) {
      input.left.push_back(sol.terms[p].left_value(1));
      input.blocks.push_back(&sol.terms[p].block(1));
    }
  }
};

template <Matrix (*Fn)(const ForcingInput&)>
void BM_forcing(benchmark::State& state) {
  const Forcing f(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(Fn(f.input));
  }
  state.SetItemsProcessed(state.iterations() * (2 * state.range(1) + 1));
}

template <ScanResult (*Fn)(std::size_t, const std::function<double(std::size_t)>&)>
void BM_alpha_scan(benchmark::State& state) {
  const ProblemSpec spec = *builtin_problem("paper_example");
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> ts(n);
  std::vector<Vector> us(n, Vector(2));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> ud(-3.0, 3.0), td(0.0, 6.0);
  for (std::size_t i = 0; i < n; ++i) {
    ts[i] = td(rng);
    us[i] << ud(rng), ud(rng);
  }
  const auto f = [&](std::size_t i) { return max_symmetric_eigenvalue(jacobian(spec, ts[i], us[i])); };
  for (auto _ : state) {
    benchmark::DoNotOptimize(Fn(n, f));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}

}  // namespace

BENCHMARK(BM_forcing<assemble_forcing>)->Args({4, 16})->Args({8, 64});
BENCHMARK(BM_forcing<assemble_forcing_ref>)->Args({4, 16})->Args({8, 64});
BENCHMARK(BM_alpha_scan<max_scan>)->Arg(10000)->Arg(100000);
BENCHMARK(BM_alpha_scan<max_scan_ref>)->Arg(10000)->Arg(100000);

BENCHMARK_MAIN();
