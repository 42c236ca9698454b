#pragma once

#include <random>
#include <string>
#include <vector>

#include "fdode/linalg.hpp"
#include "fdode/problem.hpp"

namespace fdode::testing {

/// Random polynomial problem: `terms` distinct multi-indices of degree <= max_degree,
/// coefficients a + b sin(t) (or constants when time_varying is false).
ProblemSpec random_spec(std::mt19937_64& rng, int dim, int terms, int max_degree, bool time_varying = true);

Vector random_vector(std::mt19937_64& rng, int dim, double scale = 1.0);

/// Scalar/1-D problem u' = N u + phi from literal text fragments.
ProblemSpec spec_from_text(const std::string& text);

/// Brute-force sum of u^alpha C(t) without any shared code path.
Matrix brute_force_N(const ProblemSpec& spec, double t, const Vector& u);

/// Path to a file in the source tree.
std::string source_path(const std::string& relative);

}  // namespace fdode::testing
