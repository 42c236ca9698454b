#include <doctest.h>

#include <cmath>

#include "fdode/adm.hpp"
#include "fdode/errors.hpp"
#include "fdode/linode.hpp"
#include "fdode/problem.hpp"

using namespace fdode;

namespace {

double final_error(const PiecewiseTrajectory& traj, const ProblemSpec& spec) {
  return (traj.final_value() - *eval_exact(spec, traj.grid().t_end())).norm();
}

}  // namespace

TEST_CASE("split equal to N leaves no remainder") {
  const ProblemSpec spec = *builtin_problem("linear_decay");
  AdmConfig cfg;
  cfg.linear_split = Vector::LinSpaced(2, -1.0, -2.0).asDiagonal();
  cfg.rank = 4;
  const SeriesSolution sol = adm_solve(spec, cfg);
  REQUIRE(sol.rank() == 4);
  for (int i = 1; i <= 4; ++i) {
    CHECK(trajectory_sup_norm(sol.terms[i], NormMode::value) == 0.0);
  }
  CHECK(final_error(sol.terms[0], spec) <= 1e-9);
}

TEST_CASE("term 0 is the solution of the split linear problem") {
  // u' = -u + 1, u(0) = 0  ->  1 - exp(-t)
  const ProblemSpec spec = parse_problem(
      "dim = 1\nu0 = [0]\nphi = [\"1\"]\n[[term]]\npowers = [2]\nmatrix = [[\"-1\"]]\n");
  AdmConfig cfg;
  cfg.rank = 2;
  const SeriesSolution sol = adm_solve(spec, cfg);
  const PiecewiseTrajectory& u0 = sol.terms[0];
  for (int k = 0; k < u0.layout().samples(); ++k) {
    const double t = u0.sample_time(0, k);
    CHECK(std::abs(u0.sample(0, k)(0) - (1 - std::exp(-t))) <= 1e-9);
  }
}

TEST_CASE("default layout uses spacing near 0.0125") {
  const ProblemSpec spec = *builtin_problem("paper_example");
  AdmConfig cfg;
  CHECK(adm_inner_steps(spec, cfg) == 160);
  cfg.inner_steps = 7;
  CHECK(adm_inner_steps(spec, cfg) == 7);
}

TEST_CASE("paper_example decomposition diverges on [0, 2]") {
  const ProblemSpec spec = *builtin_problem("paper_example");
  AdmConfig cfg;
  cfg.rank = 4;
  cfg.t_end = 2.0;
  const SeriesSolution sol = adm_solve(spec, cfg);
  std::vector<double> errors;
  for (int q = 0; q <= 4; ++q) {
    PiecewiseTrajectory sum = sol.terms[0];
    for (int i = 1; i <= q; ++i) {
      sum = sum + sol.terms[i];
    }
    errors.push_back(final_error(sum, spec));
  }
  for (std::size_t q = 1; q < errors.size(); ++q) {
    CHECK(errors[q] > errors[q - 1]);
  }
  const DivergenceReport rep = divergence_indicator(sol, spec, TimeWindow{0.0, 2.0});
  CHECK(rep.verdict == Verdict::diverging);
  CHECK(rep.term_norms.size() == 5);
}

TEST_CASE("weakly nonlinear problem converges to the reference") {
  const ProblemSpec spec = parse_problem(
      "dim = 1\nu0 = [1]\nphi = [\"cos(t)\"]\n"
      "[[term]]\npowers = [0]\nmatrix = [[\"-1\"]]\n"
      "[[term]]\npowers = [2]\nmatrix = [[\"-0.001\"]]\n");
  AdmConfig cfg;
  cfg.rank = 4;
  cfg.t_end = 1.0;
  const SeriesSolution sol = adm_solve(spec, cfg);
  PiecewiseTrajectory sum = sol.terms[0];
  for (int i = 1; i <= 4; ++i) {
    sum = sum + sol.terms[i];
  }
  const PiecewiseTrajectory ref = reference_solve(spec, sum.grid(), sum.layout(), 1e-10);
  CHECK(trajectory_sup_norm(sum - ref, NormMode::value) <= 1e-4);
  CHECK(divergence_indicator(sol, spec, TimeWindow{0.0, 1.0}).verdict == Verdict::converging);
}

TEST_CASE("classification of term norms") {
  CHECK(classify_term_norms({1.0, 0.1, 0.01}) == Verdict::converging);
  CHECK(classify_term_norms({1.0, 3.0, 9.0}) == Verdict::diverging);
  CHECK(classify_term_norms({1.0, 1.2, 1.5}) == Verdict::inconclusive);
  CHECK(classify_term_norms({0.0, 0.0, 0.0}) == Verdict::inconclusive);
  CHECK(classify_term_norms({100.0, 1.0, 3.0, 9.0}) == Verdict::diverging);
  CHECK_THROWS_AS(classify_term_norms({1.0, 2.0}), InvalidArgument);
  CHECK(std::string(to_string(Verdict::diverging)) == "diverging");
}

TEST_CASE("divergence indicator needs rank 2") {
  const ProblemSpec spec = *builtin_problem("paper_example");
  AdmConfig cfg;
  cfg.rank = 1;
  cfg.t_end = 0.5;
  const SeriesSolution sol = adm_solve(spec, cfg);
  CHECK_THROWS_AS(divergence_indicator(sol, spec, TimeWindow{0.0, 0.5}), InvalidArgument);
}

TEST_CASE("adm argument checks") {
  const ProblemSpec spec = *builtin_problem("paper_example");
  AdmConfig cfg;
  cfg.t_end = 0.0;
  CHECK_THROWS_AS(adm_solve(spec, cfg), InvalidArgument);
  cfg.t_end = 1.0;
  cfg.linear_split = Matrix::Identity(3, 3);
  CHECK_THROWS_AS(adm_solve(spec, cfg), InvalidArgument);
  cfg.linear_split = Matrix();
  cfg.rank = kMaxRank + 1;
  CHECK_THROWS_AS(adm_solve(spec, cfg), InvalidArgument);
}
