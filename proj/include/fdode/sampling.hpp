#pragma once

#include <cstdint>
#include <functional>

namespace fdode {

inline constexpr std::uint64_t kDefaultSeed = 20240607;

/// FDODE_SEED from the environment when set and parseable, else kDefaultSeed.
std::uint64_t default_seed();

struct SampledSup {
  double value;      // reported bound
  double sample_max; // plain maximum over the samples
  double argmax;     // sample location of the maximum (lowest index on ties)
  bool at_end;       // the maximum sits on the last sample
};

/// Sup of a scalar function on [a, b] from `samples` uniform points. The
/// reported value adds max|second difference| / 8, which bounds the overshoot
/// of the interpolant between samples.
SampledSup uniform_sup(const std::function<double(double)>& f, double a, double b, int samples);

}  // namespace fdode
