#pragma once

#include <string>
#include <vector>

#include "fdode/fdm.hpp"
#include "fdode/linalg.hpp"
#include "fdode/problem.hpp"
#include "fdode/trajectory.hpp"

namespace fdode {

struct AdmConfig {
  /// Linear part L of the split N(t,u) u = L u + R(t,u); empty means -I.
  Matrix linear_split;
  int rank = 4;
  double t_end = 2.0;
  /// RK4 steps on the single interval [t0, t_end]; 0 picks ceil((t_end - t0) / 0.0125).
  int inner_steps = 0;
};

int adm_inner_steps(const ProblemSpec& spec, const AdmConfig& cfg);

/// Adomian decomposition: u_0' = L u_0 + phi, u_0(t0) = u0, and for i >= 1
/// u_i' = L u_i + A_{i-1}(R; u_0..u_{i-1}), u_i(t0) = 0, all on one interval.
SeriesSolution adm_solve(const ProblemSpec& spec, const AdmConfig& cfg);

enum class Verdict { diverging, converging, inconclusive };

const char* to_string(Verdict v) noexcept;

struct DivergenceReport {
  Verdict verdict = Verdict::inconclusive;
  std::vector<double> term_norms;
};

/// diverging if the last three norms grow by a factor >= 1.5 at each step,
/// converging if they shrink by a factor <= 0.75, else inconclusive.
Verdict classify_term_norms(const std::vector<double>& norms);

/// Sup norm of every term over the window, then classify_term_norms. Needs rank >= 2.
DivergenceReport divergence_indicator(const SeriesSolution& sol, const ProblemSpec& spec,
                                      TimeWindow window);

}  // namespace fdode
