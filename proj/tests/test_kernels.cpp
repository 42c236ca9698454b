#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "fdode/errors.hpp"
#include "fdode/fdm.hpp"
#include "fdode/kernels.hpp"
#include "fdode/problem.hpp"
#include "support/fixtures.hpp"

using namespace fdode;

namespace {

struct ForcingFixture {
  ProblemSpec spec;
  std::vector<std::vector<Matrix>> coeffs;
  std::vector<Matrix> blocks;
  ForcingInput input;

  ForcingFixture(ProblemSpec s, int j, int samples, std::uint64_t seed) : spec(std::move(s)) {
    std::mt19937_64 rng(seed);
    for (int k = 0; k < samples; ++k) {
      coeffs.push_back(coefficients_at(spec, 0.01 * k));
    }
    for (int p = 0; p < j; ++p) {
      Matrix b(spec.dim, samples);
      for (int k = 0; k < samples; ++k) {
        b.col(k) = fdode::testing::random_vector(rng, spec.dim);
      }
      blocks.push_back(b);
    }
    input.spec = &spec;
    input.j = j;
    input.coeffs = &coeffs;
    for (const Matrix& b : blocks) {
      input.left.push_back(b.col(0));
      input.blocks.push_back(&b);
    }
  }
};

}  // namespace

TEST_CASE("parallel forcing assembly is bitwise equal to the serial one") {
  INFO("threads = " << kernel_threads());
  std::mt19937_64 rng(71);
  for (int j = 1; j <= 5; ++j) {
    const ForcingFixture paper(*builtin_problem("paper_example"), j, 65, 100 + j);
    CHECK(assemble_forcing(paper.input) == assemble_forcing_ref(paper.input));
    const ForcingFixture random(fdode::testing::random_spec(rng, 3, 4, 3), j, 33, 200 + j);
    CHECK(assemble_forcing(random.input) == assemble_forcing_ref(random.input));
  }
}

TEST_CASE("assemble_F is unchanged by the kernel path") {
  const SeriesSolution sol =
      fd_solve(*builtin_problem("paper_example"), FdRunConfig{3, make_uniform_grid(0.0, 1.0, 0.2), 16});
  const auto a = fd_solve(*builtin_problem("paper_example"), FdRunConfig{3, make_uniform_grid(0.0, 1.0, 0.2), 16});
  for (int q = 0; q <= 3; ++q) {
    for (std::size_t i = 0; i < sol.terms[q].interval_count(); ++i) {
      CHECK(sol.terms[q].block(i) == a.terms[q].block(i));
    }
  }
}

TEST_CASE("forcing input checks") {
  ForcingFixture f(*builtin_problem("paper_example"), 2, 9, 1);
  f.input.left.pop_back();
  CHECK_THROWS_AS(assemble_forcing(f.input), InvalidArgument);
  CHECK_THROWS_AS(assemble_forcing_ref(f.input), InvalidArgument);
}

TEST_CASE("max scan agrees with the serial reference") {
  std::mt19937_64 rng(72);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (std::size_t n : {1u, 2u, 7u, 1000u, 100003u}) {
    std::vector<double> values(n);
    for (double& v : values) {
      v = d(rng);
    }
    const auto f = [&](std::size_t i) { return values[i]; };
    const ScanResult a = max_scan(n, f);
    const ScanResult b = max_scan_ref(n, f);
    CHECK(a.value == b.value);
    CHECK(a.index == b.index);
  }
}

TEST_CASE("max scan ties go to the lowest index") {
  const auto f = [](std::size_t i) { return (i % 1000 == 999) ? 5.0 : std::sin(static_cast<double>(i)); };
  const ScanResult a = max_scan(100000, f);
  CHECK(a.value == 5.0);
  CHECK(a.index == 999);
  CHECK(max_scan_ref(100000, f).index == 999);
  const ScanResult flat = max_scan(1000, [](std::size_t) { return 1.0; });
  CHECK(flat.index == 0);
}

TEST_CASE("max scan skips NaN and forwards exceptions") {
  const ScanResult a = max_scan(10, [](std::size_t i) { return i == 3 ? NAN : static_cast<double>(i % 5); });
  CHECK(a.value == 4.0);
  CHECK(a.index == 4);
  CHECK_THROWS_AS(max_scan(0, [](std::size_t) { return 0.0; }), InvalidArgument);
  CHECK_THROWS_AS(max_scan(100,
                           [](std::size_t i) -> double {
                             if (i == 57) {
                               throw std::runtime_error("boom");
                             }
                             return 0.0;
                           }),
                  std::runtime_error);
}
