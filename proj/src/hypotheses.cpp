#include "fdode/hypotheses.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "fdode/errors.hpp"
#include "fdode/fdm.hpp"
#include "fdode/kernels.hpp"
#include "fdode/sampling.hpp"

namespace fdode {

Matrix jacobian(const ProblemSpec& spec, double t, const Vector& u) {
  const std::vector<Matrix> coeffs = coefficients_at(spec, t);
  return eval_N(spec, coeffs, u) + upsilon(spec, coeffs, u, u);
}

Box symmetric_box(int dim, double half_width) {
  return Box{Vector::Constant(dim, -half_width), Vector::Constant(dim, half_width)};
}

namespace {

void check_range(TimeRange r, const char* who) {
  if (!(r.b >= r.a) || !std::isfinite(r.a) || !std::isfinite(r.b)) {
    throw InvalidArgument(std::string(who) + ": bad time range");
  }
}

double uniform(std::mt19937_64& rng, double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(rng);
}

Vector random_direction(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vector d(dim);
  do {
    for (int k = 0; k < dim; ++k) {
      d(k) = g(rng);
    }
  } while (d.norm() < 1e-12);
  return d / d.norm();
}

// Symmetric part, and 1/sum(1/|lambda|) when it is negative definite.
double trace_route(const Matrix& js) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(js, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NumericalFailure("hypotheses", "symmetric eigen-solver failed");
  }
  double s = 0.0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double l = es.eigenvalues()(k);
    if (!(l < 0.0)) {
      return NAN;
    }
    s += 1.0 / -l;
  }
  return 1.0 / s;
}

}  // namespace

AlphaEstimate estimate_alpha(const ProblemSpec& spec, const Box& region, TimeRange t_range,
                             std::size_t samples, std::uint64_t seed) {
  check_range(t_range, "estimate_alpha");
  if (samples < 100) {
    throw InvalidArgument("estimate_alpha: need at least 100 samples");
  }
  if (region.lo.size() != spec.dim || region.hi.size() != spec.dim ||
      !(region.hi.array() >= region.lo.array()).all()) {
    throw InvalidArgument("estimate_alpha: region must be a dim-dimensional box with lo <= hi");
  }
  std::mt19937_64 rng(seed);
  std::vector<double> ts(samples);
  std::vector<Vector> us(samples, Vector(spec.dim));
  for (std::size_t s = 0; s < samples; ++s) {
    ts[s] = uniform(rng, t_range.a, t_range.b);
    for (int k = 0; k < spec.dim; ++k) {
      us[s](k) = uniform(rng, region.lo(k), region.hi(k));
    }
  }
  const bool time_free = [&] {
    for (const Term& term : spec.terms) {
      for (const auto& row : term.matrix) {
        for (const TimeExpr& e : row) {
          if (e.depends_on_t()) {
            return false;
          }
        }
      }
    }
    return true;
  }();
  const std::vector<Matrix> fixed = time_free ? coefficients_at(spec, t_range.a) : std::vector<Matrix>{};
  const auto jac = [&](std::size_t s) {
    const std::vector<Matrix> coeffs = time_free ? fixed : coefficients_at(spec, ts[s]);
    return Matrix(eval_N(spec, coeffs, us[s]) + upsilon(spec, coeffs, us[s], us[s]));
  };
  const ScanResult top = max_scan(samples, [&](std::size_t s) { return max_symmetric_eigenvalue(jac(s)); });
  // Smallest 1/sum(1/|lambda|), or NaN as soon as one sample is not negative definite.
  const ScanResult trace = max_scan(samples, [&](std::size_t s) {
    const Matrix j = jac(s);
    const double r = trace_route(0.5 * (j + j.transpose()));
    return std::isnan(r) ? INFINITY : -r;
  });
  AlphaEstimate out;
  out.alpha = -top.value;
  out.t_at = ts[top.index];
  out.u_at = us[top.index];
  out.trace_bound = std::isinf(trace.value) ? NAN : -trace.value;
  out.samples = samples;
  out.seed = seed;
  return out;
}

KappaEstimate estimate_kappa(const ProblemSpec& spec, TimeRange t_range, int samples) {
  check_range(t_range, "estimate_kappa");
  if (samples < 2) {
    throw InvalidArgument("estimate_kappa: need at least 2 samples");
  }
  KappaEstimate out;
  out.samples = samples;
  if (t_range.b == t_range.a) {
    out.kappa = eval_phi(spec, t_range.a).norm();
    out.t_at = t_range.a;
    return out;
  }
  const SampledSup sup =
      uniform_sup([&](double t) { return eval_phi(spec, t).norm(); }, t_range.a, t_range.b, samples);
  out.kappa = sup.value;
  out.t_at = sup.argmax;
  out.range_dependent = sup.at_end && sup.sample_max > 0.0;
  return out;
}

MuPair compute_mu(double u0_norm, double kappa, double alpha, double epsilon1) {
  if (!(alpha > 0.0)) {
    throw HypothesisViolated("compute_mu: dissipativity constant alpha must be positive", -alpha);
  }
  if (!(epsilon1 > 0.0)) {
    throw InvalidArgument("compute_mu: epsilon1 must be positive");
  }
  const double base = std::max(u0_norm, kappa / alpha);
  return MuPair{base + epsilon1, base + 0.5 * epsilon1};
}

double hbar_formula(double alpha, double mu, double mu1, double kappa, double gamma1, double gamma2) {
  const double margin = alpha * mu1 - kappa;
  if (!(margin > 0.0)) {
    throw HypothesisViolated("alpha * mu1 must exceed kappa", -margin);
  }
  if (gamma2 == 0.0) {
    return INFINITY;
  }
  return margin / (gamma2 * (gamma1 * mu + kappa));
}

HbarEstimate estimate_hbar(const ProblemSpec& spec, double mu, double mu1, double kappa, double alpha,
                           TimeRange t_range, std::size_t samples, std::uint64_t seed, int directions) {
  check_range(t_range, "estimate_hbar");
  if (alpha * mu1 - kappa <= 0.0) {
    throw HypothesisViolated("estimate_hbar: alpha * mu1 must exceed kappa", kappa - alpha * mu1);
  }
  if (samples < 1 || directions < 1) {
    throw InvalidArgument("estimate_hbar: need at least one sample and one direction");
  }
  std::mt19937_64 rng(seed);
  std::vector<double> ts(samples);
  std::vector<Vector> us(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    ts[s] = uniform(rng, t_range.a, t_range.b);
    const Vector d = random_direction(rng, spec.dim);
    // Every other point on the sphere, where norms of polynomial maps tend to peak.
    const double r = s % 2 == 0 ? mu : mu * std::pow(uniform(rng, 0.0, 1.0), 1.0 / spec.dim);
    us[s] = r * d;
  }
  std::vector<Vector> dirs;
  for (int k = 0; k < directions; ++k) {
    dirs.push_back(random_direction(rng, spec.dim));
  }
  const ScanResult g1 = max_scan(samples, [&](std::size_t s) {
    return spectral_norm(eval_N(spec, ts[s], us[s]));
  });
  const ScanResult g2 = max_scan(samples, [&](std::size_t s) {
    const std::vector<Matrix> coeffs = coefficients_at(spec, ts[s]);
    double best = 0.0;
    for (const Vector& d : dirs) {
      best = std::max(best, spectral_norm(upsilon(spec, coeffs, us[s], mu * d)));
    }
    return best;
  });
  HbarEstimate out;
  out.gamma1 = 1.01 * g1.value;
  out.gamma2 = 1.01 * g2.value;
  out.h_bar = hbar_formula(alpha, mu, mu1, kappa, out.gamma1, out.gamma2);
  return out;
}

HypothesisReport hypothesis_report(const ProblemSpec& spec, TimeRange t_range, const Box& region,
                                   double epsilon1, HypothesisOptions options) {
  spec.validate();
  if (options.seed == 0) {
    options.seed = default_seed();
  }
  HypothesisReport rep;
  rep.t_range = t_range;
  rep.region = region;
  rep.options = options;
  rep.epsilon1 = epsilon1;

  rep.majorant = compute_majorant(spec, t_range.a, std::max(t_range.b, t_range.a + 1e-12));
  rep.condition1_ok = true;

  rep.kappa = estimate_kappa(spec, t_range, options.kappa_samples);
  rep.condition2_ok = std::isfinite(rep.kappa.kappa);
  if (rep.kappa.range_dependent) {
    rep.notes.push_back("sup of |phi| is attained at the end of the time range; kappa depends on the range");
  }

  rep.alpha = estimate_alpha(spec, region, t_range, options.alpha_samples, options.seed);
  rep.condition3_ok = rep.alpha.alpha > 0.0;

  rep.mu = rep.mu1 = rep.gamma1 = rep.gamma2 = rep.h_bar = NAN;
  if (!rep.condition3_ok) {
    rep.notes.push_back("symmetrized Jacobian is not negative definite at the maximizing sample");
    return rep;
  }
  const MuPair mu = compute_mu(spec.u0.norm(), rep.kappa.kappa, rep.alpha.alpha, epsilon1);
  rep.mu = mu.mu;
  rep.mu1 = mu.mu1;
  const HbarEstimate hb = estimate_hbar(spec, rep.mu, rep.mu1, rep.kappa.kappa, rep.alpha.alpha, t_range,
                                        options.gamma_samples, options.seed + 1, options.directions);
  rep.gamma1 = hb.gamma1;
  rep.gamma2 = hb.gamma2;
  rep.h_bar = hb.h_bar;
  return rep;
}

namespace {

std::string num(double x) { return format_real(x); }

std::string vec(const Vector& v) {
  std::string out = "[";
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    out += (k > 0 ? ", " : "") + num(v(k));
  }
  return out + "]";
}

}  // namespace

std::string to_key_value(const HypothesisReport& r) {
  std::ostringstream out;
  out << "t_range = [" << num(r.t_range.a) << ", " << num(r.t_range.b) << "]\n";
  out << "region_lo = " << vec(r.region.lo) << "\n";
  out << "region_hi = " << vec(r.region.hi) << "\n";
  out << "seed = " << r.options.seed << "\n";
  out << "alpha_samples = " << r.alpha.samples << "\n";
  out << "kappa_samples = " << r.kappa.samples << "\n";
  out << "gamma_samples = " << r.options.gamma_samples << "\n";
  out << "gamma_directions = " << r.options.directions << "\n";
  out << "majorant = " << vec(Eigen::Map<const Vector>(r.majorant.coeffs.data(),
                                                       static_cast<Eigen::Index>(r.majorant.coeffs.size())))
      << "\n";
  out << "alpha = " << num(r.alpha.alpha) << "\n";
  out << "alpha_t = " << num(r.alpha.t_at) << "\n";
  out << "alpha_u = " << vec(r.alpha.u_at) << "\n";
  out << "alpha_trace_bound = " << num(r.alpha.trace_bound) << "\n";
  out << "kappa = " << num(r.kappa.kappa) << "\n";
  out << "kappa_t = " << num(r.kappa.t_at) << "\n";
  out << "kappa_range_dependent = " << (r.kappa.range_dependent ? "true" : "false") << "\n";
  out << "epsilon1 = " << num(r.epsilon1) << "\n";
  out << "mu = " << num(r.mu) << "\n";
  out << "mu1 = " << num(r.mu1) << "\n";
  out << "gamma1 = " << num(r.gamma1) << "\n";
  out << "gamma2 = " << num(r.gamma2) << "\n";
  out << "h_bar = " << num(r.h_bar) << "\n";
  out << "condition1_ok = " << (r.condition1_ok ? "true" : "false") << "\n";
  out << "condition2_ok = " << (r.condition2_ok ? "true" : "false") << "\n";
  out << "condition3_ok = " << (r.condition3_ok ? "true" : "false") << "\n";
  for (std::size_t k = 0; k < r.notes.size(); ++k) {
    out << "note" << k + 1 << " = " << r.notes[k] << "\n";
  }
  return out.str();
}

}  // namespace fdode
