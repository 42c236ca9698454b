#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "fdode/errors.hpp"
#include "fdode/hypotheses.hpp"
#include "fdode/problem.hpp"
#include "support/fixtures.hpp"

using namespace fdode;
using fdode::testing::random_spec;
using fdode::testing::random_vector;

namespace {

const ProblemSpec& paper() {
  static const ProblemSpec spec = *builtin_problem("paper_example");
  return spec;
}

ProblemSpec scalar(const std::string& coeff, const std::string& phi = "0") {
  return parse_problem("dim = 1\nu0 = [1]\nphi = [\"" + phi + "\"]\n[[term]]\npowers = [0]\nmatrix = [[\"" + coeff +
                       "\"]]\n");
}

ProblemSpec minus_identity(const std::string& phi0 = "0", const std::string& phi1 = "0") {
  return parse_problem("dim = 2\nu0 = [1, 0]\nphi = [\"" + phi0 + "\", \"" + phi1 +
                       "\"]\n[[term]]\npowers = [0, 0]\nmatrix = [[\"-1\", \"0\"], [\"0\", \"-1\"]]\n");
}

}  // namespace

TEST_CASE("jacobian examples") {
  const ProblemSpec lin = minus_identity();
  CHECK((jacobian(lin, 0.3, Vector::Ones(2)) + Matrix::Identity(2, 2)).norm() == 0.0);
  for (double t : {0.0, 1.0, 5.0}) {
    CHECK((jacobian(paper(), t, Vector::Zero(2)) + Matrix::Identity(2, 2)).norm() == 0.0);
  }
  CHECK_THROWS_AS(jacobian(paper(), 0.0, Vector::Zero(3)), InvalidArgument);
}

TEST_CASE("jacobian matches finite differences of N(t,u)u") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    const int dim = 1 + trial % 3;
    const ProblemSpec spec = random_spec(rng, dim, 4, 3);
    const Vector u = random_vector(rng, dim);
    const double t = 0.2 * trial;
    const Matrix j = jacobian(spec, t, u);
    const auto g = [&](const Vector& x) -> Vector { return eval_N(spec, t, x) * x; };
    const double eps = 1e-5;
    for (int p = 0; p < dim; ++p) {
      Vector up = u, um = u;
      up(p) += eps;
      um(p) -= eps;
      CHECK((j.col(p) - (g(up) - g(um)) / (2 * eps)).norm() <= 1e-7 * (1.0 + j.norm()));
    }
  }
}

TEST_CASE("alpha of minus identity is one") {
  const AlphaEstimate a = estimate_alpha(minus_identity(), symmetric_box(2, 3.0), TimeRange{0.0, 1.0}, 1000, 7);
  CHECK(a.alpha == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(a.samples == 1000);
  CHECK(a.seed == 7);
}

TEST_CASE("anti-dissipative problem fails condition 3") {
  const ProblemSpec spec = scalar("1");
  const AlphaEstimate a = estimate_alpha(spec, symmetric_box(1, 1.0), TimeRange{0.0, 1.0}, 200, 7);
  CHECK(a.alpha <= 0.0);
  const HypothesisReport rep = hypothesis_report(spec, TimeRange{0.0, 1.0}, symmetric_box(1, 1.0));
  CHECK_FALSE(rep.condition3_ok);
}

TEST_CASE("alpha argument checks") {
  CHECK_THROWS_AS(estimate_alpha(paper(), symmetric_box(2, 3.0), TimeRange{0.0, 1.0}, 99, 1), InvalidArgument);
  CHECK_THROWS_AS(estimate_alpha(paper(), symmetric_box(3, 3.0), TimeRange{0.0, 1.0}, 100, 1), InvalidArgument);
  CHECK_THROWS_AS(estimate_alpha(paper(), symmetric_box(2, 3.0), TimeRange{1.0, 0.0}, 100, 1), InvalidArgument);
}

TEST_CASE("alpha is deterministic for a fixed seed") {
  const auto a = estimate_alpha(paper(), symmetric_box(2, 3.0), TimeRange{0.0, 6.0}, 5000, 11);
  const auto b = estimate_alpha(paper(), symmetric_box(2, 3.0), TimeRange{0.0, 6.0}, 5000, 11);
  CHECK(a.alpha == b.alpha);
  CHECK(a.u_at == b.u_at);
}

TEST_CASE("alpha does not drop on a smaller region") {
  // exact form on one sample set: restricting the samples to a sub-box can only raise alpha
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ud(-3.0, 3.0), td(0.0, 6.0);
  std::vector<std::pair<double, Vector>> pts;
  for (int s = 0; s < 20000; ++s) {
    const double t = td(rng);
    Vector u(2);
    u << ud(rng), ud(rng);
    pts.emplace_back(t, u);
  }
  const auto alpha_within = [&](double w) {
    double worst = -INFINITY;
    for (const auto& [t, u] : pts) {
      if (u.cwiseAbs().maxCoeff() <= w) {
        worst = std::max(worst, max_symmetric_eigenvalue(jacobian(paper(), t, u)));
      }
    }
    return -worst;
  };
  double prev = alpha_within(3.0);
  for (double w : {2.0, 1.0, 0.5}) {
    const double a = alpha_within(w);
    CHECK(a >= prev);
    prev = a;
  }
  // estimator form: independent draws, so allow the sampling gap of the coarser box
  const auto big = estimate_alpha(paper(), symmetric_box(2, 3.0), TimeRange{0.0, 6.0}, 20000, 5);
  for (double w : {2.0, 1.0, 0.5}) {
    const auto small = estimate_alpha(paper(), symmetric_box(2, w), TimeRange{0.0, 6.0}, 20000, 5);
    CHECK(small.alpha >= big.alpha - 5e-3);
  }
}

TEST_CASE("paper_example symmetric Jacobian is negative on the sampled box") {
  const auto a = estimate_alpha(paper(), symmetric_box(2, 3.0), TimeRange{0.0, 6.0}, 20000, 3);
  CHECK(a.alpha > 0.0);
  CHECK(a.trace_bound > 0.0);
  CHECK(a.trace_bound <= a.alpha);
}

TEST_CASE("kappa examples") {
  CHECK(estimate_kappa(minus_identity(), TimeRange{0.0, 1.0}).kappa == 0.0);
  // constant forcing: the second-difference correction vanishes, leaving |c|
  const KappaEstimate c = estimate_kappa(minus_identity("3", "4"), TimeRange{0.0, 1.0});
  CHECK(c.kappa == doctest::Approx(5.0).epsilon(1e-14));
  const KappaEstimate p = estimate_kappa(paper(), TimeRange{0.0, 2 * M_PI});
  CHECK(p.kappa <= 2.9);
  CHECK(p.kappa > 2.2);
  CHECK_FALSE(p.range_dependent);
  CHECK_THROWS_AS(estimate_kappa(paper(), TimeRange{0.0, 1.0}, 1), InvalidArgument);
}

TEST_CASE("growing forcing is flagged as range dependent") {
  const ProblemSpec spec = scalar("-1", "exp(t)");
  const KappaEstimate k = estimate_kappa(spec, TimeRange{0.0, 10.0});
  CHECK(std::isfinite(k.kappa));
  CHECK(k.kappa >= std::exp(10.0));
  CHECK(k.range_dependent);
  const HypothesisReport rep = hypothesis_report(spec, TimeRange{0.0, 10.0}, symmetric_box(1, 1.0));
  CHECK(rep.kappa.range_dependent);
  CHECK_FALSE(rep.notes.empty());
}

TEST_CASE("compute_mu") {
  const MuPair a = compute_mu(1.0, 0.0, 1.0, 0.2);
  CHECK(a.mu == doctest::Approx(1.2));
  CHECK(a.mu1 == doctest::Approx(1.1));
  const MuPair b = compute_mu(1.0, 2.9, 0.465, 0.1);
  CHECK(b.mu == doctest::Approx(6.337).epsilon(1e-3));
  CHECK(b.mu1 == doctest::Approx(6.287).epsilon(1e-3));
  CHECK(compute_mu(5.0, 1.0, 1.0, 0.5).mu == 5.5);
  CHECK_THROWS_AS(compute_mu(1.0, 1.0, 0.0, 0.1), HypothesisViolated);
  CHECK_THROWS_AS(compute_mu(1.0, 1.0, -1.0, 0.1), HypothesisViolated);
  CHECK_THROWS_AS(compute_mu(1.0, 1.0, 1.0, 0.0), InvalidArgument);
}

TEST_CASE("compute_mu relations") {
  std::mt19937_64 rng(62);
  std::uniform_real_distribution<double> d(0.01, 5.0);
  for (int i = 0; i < 200; ++i) {
    const double u0 = d(rng), kappa = d(rng), alpha = d(rng), eps = d(rng);
    const MuPair m = compute_mu(u0, kappa, alpha, eps);
    CHECK(m.mu - m.mu1 == doctest::Approx(eps / 2));
    CHECK(m.mu == doctest::Approx(std::max(u0, kappa / alpha) + eps));
    CHECK(alpha * m.mu1 - kappa > 0.0);
  }
}

TEST_CASE("h_bar formula") {
  CHECK(hbar_formula(1.0, 1.2, 1.1, 0.0, 2.0, 3.0) == doctest::Approx(1.1 / (3 * 2.4)));
  CHECK(std::isinf(hbar_formula(1.0, 1.2, 1.1, 0.0, 2.0, 0.0)));
  try {
    hbar_formula(0.1, 1.2, 1.1, 1.0, 2.0, 3.0);
    FAIL("expected violation");
  } catch (const HypothesisViolated& e) {
    CHECK(e.deficit() > 0.0);
  }
}

TEST_CASE("h_bar estimates") {
  const HbarEstimate lin = estimate_hbar(minus_identity(), 1.2, 1.1, 0.0, 1.0, TimeRange{0.0, 1.0}, 256, 1);
  CHECK(std::isinf(lin.h_bar));
  CHECK(lin.gamma2 == 0.0);
  CHECK(lin.gamma1 >= 1.0);

  const MuPair m = compute_mu(1.0, 2.9, 0.6, 0.1);
  const HbarEstimate p = estimate_hbar(paper(), m.mu, m.mu1, 2.9, 0.6, TimeRange{0.0, 6.0}, 512, 1);
  CHECK(p.h_bar > 0.0);
  CHECK(std::isfinite(p.h_bar));
  // N(t, u) at |u| = mu along an axis is at least 1 + 2 mu^2 on that diagonal entry
  CHECK(p.gamma1 >= 1 + m.mu * m.mu);
  CHECK_THROWS_AS(estimate_hbar(paper(), m.mu, m.mu1, 10.0, 0.6, TimeRange{0.0, 6.0}, 64, 1), HypothesisViolated);
}

TEST_CASE("paper_example report") {
  HypothesisOptions opts;
  opts.alpha_samples = 20000;
  opts.gamma_samples = 512;
  const HypothesisReport rep = hypothesis_report(paper(), TimeRange{0.0, 6.0}, symmetric_box(2, 3.0), 0.1, opts);
  CHECK(rep.condition1_ok);
  CHECK(rep.condition2_ok);
  CHECK(rep.condition3_ok);
  CHECK(rep.h_bar > 0.0);
  CHECK(rep.mu == doctest::Approx(std::max(1.0, rep.kappa.kappa / rep.alpha.alpha) + 0.1));
  CHECK(rep.majorant.coeffs == std::vector<double>{1.0, 2.0, 2.0});
  const std::string text = to_key_value(rep);
  for (const char* key : {"alpha = ", "kappa = ", "mu = ", "mu1 = ", "gamma1 = ", "gamma2 = ", "h_bar = ", "seed = ",
                          "condition1_ok = true", "condition2_ok = true", "condition3_ok = true"}) {
    CHECK_MESSAGE(text.find(key) != std::string::npos, key);
  }
}

TEST_CASE("report is reproducible") {
  HypothesisOptions opts;
  opts.alpha_samples = 2000;
  opts.gamma_samples = 128;
  opts.seed = 99;
  const auto a = to_key_value(hypothesis_report(paper(), TimeRange{0.0, 2.0}, symmetric_box(2, 3.0), 0.1, opts));
  const auto b = to_key_value(hypothesis_report(paper(), TimeRange{0.0, 2.0}, symmetric_box(2, 3.0), 0.1, opts));
  CHECK(a == b);
  CHECK(a.find("seed = 99") != std::string::npos);
}
