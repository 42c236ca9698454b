#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fdode/linalg.hpp"
#include "fdode/problem.hpp"

namespace fdode {

/// J = N(t,u) + [dN/du_1 u, ..., dN/du_m u], the Jacobian of u -> N(t,u) u.
Matrix jacobian(const ProblemSpec& spec, double t, const Vector& u);

/// Axis-aligned box in u-space.
struct Box {
  Vector lo;
  Vector hi;
};

Box symmetric_box(int dim, double half_width);

struct TimeRange {
  double a;
  double b;
};

struct AlphaEstimate {
  double alpha = 0.0;          // -max lambda_max((J + J^T)/2) over the samples
  double t_at = 0.0;           // maximizing sample
  Vector u_at;
  double trace_bound = 0.0;    // min over samples of 1 / sum 1/|lambda_i|, NaN if some J_s is not negative definite
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

AlphaEstimate estimate_alpha(const ProblemSpec& spec, const Box& region, TimeRange t_range,
                             std::size_t samples, std::uint64_t seed);

struct KappaEstimate {
  double kappa = 0.0;
  double t_at = 0.0;
  bool range_dependent = false;  // the sup sits at the end of the range
  int samples = 0;
};

KappaEstimate estimate_kappa(const ProblemSpec& spec, TimeRange t_range, int samples = 1024);

struct MuPair {
  double mu;
  double mu1;
};

/// mu = max(|u0|, kappa/alpha) + epsilon1, mu1 = max(|u0|, kappa/alpha) + epsilon1/2.
MuPair compute_mu(double u0_norm, double kappa, double alpha, double epsilon1);

struct HbarEstimate {
  double h_bar = 0.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
};

/// h_bar = (alpha mu1 - kappa) / (gamma2 (gamma1 mu + kappa)) with gamma1 the
/// sampled sup of |N(t,u)| over |u| <= mu and gamma2 that of |Upsilon(t,u,v)|
/// over |u| <= mu, |v| = mu. +infinity when gamma2 = 0.
double hbar_formula(double alpha, double mu, double mu1, double kappa, double gamma1, double gamma2);

HbarEstimate estimate_hbar(const ProblemSpec& spec, double mu, double mu1, double kappa, double alpha,
                           TimeRange t_range, std::size_t samples, std::uint64_t seed,
                           int directions = 128);

struct HypothesisOptions {
  std::size_t alpha_samples = 100000;
  int kappa_samples = 1024;
  std::size_t gamma_samples = 2048;
  int directions = 128;
  std::uint64_t seed = 0;  // 0 means default_seed()
};

struct HypothesisReport {
  AlphaEstimate alpha;
  KappaEstimate kappa;
  double epsilon1 = 0.1;
  double mu = 0.0;
  double mu1 = 0.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double h_bar = 0.0;
  Majorant majorant;
  bool condition1_ok = false;
  bool condition2_ok = false;
  bool condition3_ok = false;
  TimeRange t_range{0.0, 0.0};
  Box region;
  HypothesisOptions options;
  std::vector<std::string> notes;
};

HypothesisReport hypothesis_report(const ProblemSpec& spec, TimeRange t_range, const Box& region,
                                   double epsilon1 = 0.1, HypothesisOptions options = {});

/// Flat "key = value" block.
std::string to_key_value(const HypothesisReport& report);

}  // namespace fdode
