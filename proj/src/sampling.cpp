#include "fdode/sampling.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <vector>

#include "fdode/errors.hpp"

namespace fdode {

std::uint64_t default_seed() {
  const char* env = std::getenv("FDODE_SEED");
  if (env == nullptr || *env == '\0') {
    return kDefaultSeed;
  }
  std::uint64_t seed = 0;
  const char* end = env + std::strlen(env);
  const auto res = std::from_chars(env, end, seed);
  if (res.ec != std::errc() || res.ptr != end) {
    return kDefaultSeed;
  }
  return seed;
}

SampledSup uniform_sup(const std::function<double(double)>& f, double a, double b, int samples) {
  if (!(b > a) || !std::isfinite(a) || !std::isfinite(b)) {
    throw InvalidArgument("uniform_sup: empty or non-finite range");
  }
  if (samples < 2) {
    throw InvalidArgument("uniform_sup: at least 2 samples are required");
  }
  std::vector<double> values(static_cast<std::size_t>(samples));
  const double step = (b - a) / (samples - 1);
  for (int k = 0; k < samples; ++k) {
    const double t = k == samples - 1 ? b : a + k * step;
    values[static_cast<std::size_t>(k)] = f(t);
  }
  SampledSup out{values[0], values[0], a, samples == 1};
  std::size_t best = 0;
  for (std::size_t k = 1; k < values.size(); ++k) {
    if (values[k] > values[best]) {
      best = k;
    }
  }
  double curvature = 0.0;
  for (std::size_t k = 1; k + 1 < values.size(); ++k) {
    curvature = std::max(curvature, std::abs(values[k + 1] - 2.0 * values[k] + values[k - 1]));
  }
  out.sample_max = values[best];
  out.argmax = best + 1 == values.size() ? b : a + static_cast<double>(best) * step;
  out.at_end = best + 1 == values.size();
  out.value = out.sample_max + curvature / 8.0;
  return out;
}

}  // namespace fdode
