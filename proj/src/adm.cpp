#include "fdode/adm.hpp"

#include <cmath>

#include "fdode/adomian.hpp"
#include "fdode/errors.hpp"
#include "fdode/linode.hpp"

namespace fdode {

int adm_inner_steps(const ProblemSpec& spec, const AdmConfig& cfg) {
  if (cfg.inner_steps > 0) {
    return cfg.inner_steps;
  }
  return std::max(1, static_cast<int>(std::ceil((cfg.t_end - spec.t0) / 0.0125 - 1e-9)));
}

SeriesSolution adm_solve(const ProblemSpec& spec, const AdmConfig& cfg) {
  spec.validate();
  if (!(cfg.t_end > spec.t0) || !std::isfinite(cfg.t_end)) {
    throw InvalidArgument("adm_solve: t_end must be finite and after t0");
  }
  if (cfg.rank < 0 || cfg.rank > kMaxRank) {
    throw InvalidArgument("adm_solve: rank must lie in 0.." + std::to_string(kMaxRank));
  }
  const Matrix L = cfg.linear_split.size() == 0 ? Matrix(-Matrix::Identity(spec.dim, spec.dim))
                                                : cfg.linear_split;
  if (L.rows() != spec.dim || L.cols() != spec.dim) {
    throw InvalidArgument("adm_solve: linear split must be dim x dim");
  }
  const PolynomialField remainder = nonlinear_remainder(spec, L);
  const Grid grid(spec.t0, {cfg.t_end});
  const InnerLayout layout{adm_inner_steps(spec, cfg)};
  const int n = layout.samples();

  SampledLinearIVP ivp;
  ivp.a = spec.t0;
  ivp.b = cfg.t_end;
  ivp.layout = layout;
  ivp.coefficient.assign(static_cast<std::size_t>(n), L);
  ivp.forcing.resize(spec.dim, n);

  SeriesSolution sol;
  for (int k = 0; k < n; ++k) {
    ivp.forcing.col(k) = eval_phi(spec, layout.time(ivp.a, ivp.b, k));
  }
  ivp.y0 = spec.u0;
  sol.terms.emplace_back(grid, spec.dim, layout, std::vector<Matrix>{solve_linear_ivp(ivp)});

  ivp.y0 = Vector::Zero(spec.dim);
  for (int i = 1; i <= cfg.rank; ++i) {
    for (int k = 0; k < n; ++k) {
      std::vector<Vector> v;
      for (int q = 0; q < i; ++q) {
        v.push_back(sol.terms[static_cast<std::size_t>(q)].block(0).col(k));
      }
      const std::vector<Vector> a = adomian_vector_field(remainder, layout.time(ivp.a, ivp.b, k), v);
      ivp.forcing.col(k) = a[static_cast<std::size_t>(i - 1)];
    }
    try {
      sol.terms.emplace_back(grid, spec.dim, layout, std::vector<Matrix>{solve_linear_ivp(ivp)});
    } catch (const NumericalFailure& e) {
      throw NumericalFailure("linode", std::string(e.what()) + " (ADM term " + std::to_string(i) + ")");
    }
  }
  return sol;
}

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::diverging:
      return "diverging";
    case Verdict::converging:
      return "converging";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

Verdict classify_term_norms(const std::vector<double>& norms) {
  if (norms.size() < 3) {
    throw InvalidArgument("classify_term_norms: need at least 3 norms");
  }
  const std::size_t p = norms.size() - 1;
  const double n0 = norms[p - 2];
  const double n1 = norms[p - 1];
  const double n2 = norms[p];
  if (n1 >= 1.5 * n0 && n2 >= 1.5 * n1 && n2 > n1 && n1 > n0) {
    return Verdict::diverging;
  }
  if (n1 <= 0.75 * n0 && n2 <= 0.75 * n1 && n2 < n1 && n1 < n0) {
    return Verdict::converging;
  }
  return Verdict::inconclusive;
}

DivergenceReport divergence_indicator(const SeriesSolution& sol, const ProblemSpec& spec,
                                      TimeWindow window) {
  if (sol.rank() < 2) {
    throw InvalidArgument("divergence_indicator: need rank >= 2");
  }
  DivergenceReport report;
  for (const PiecewiseTrajectory& term : sol.terms) {
    if (term.dim() != spec.dim) {
      throw InvalidArgument("divergence_indicator: dimension mismatch");
    }
    report.term_norms.push_back(trajectory_sup_norm(term, NormMode::value, window));
  }
  report.verdict = classify_term_norms(report.term_norms);
  return report;
}

}  // namespace fdode
