#include "ffpat/experiment/noise.hpp"

#include <cmath>

#include "ffpat/core/errors.hpp"
#include "ffpat/core/random.hpp"

namespace ffpat {

double noise_sigma(std::span<const double> values, std::span<const std::uint8_t> active,
                   double level) {
  if (values.size() != active.size()) throw StructuralError("noise: mask size mismatch");
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (active[i]) {
      sum += std::abs(values[i]);
      ++count;
    }
  }
  return count ? level * sum / static_cast<double>(count) : 0.0;
}

double add_noise_inplace(std::span<double> values, std::span<const std::uint8_t> active,
                         double level, std::uint64_t seed) {
  if (!(level >= 0.0)) throw ConfigError("noise: level must be >= 0");
  const double sigma = noise_sigma(values, active, level);
  if (level == 0.0) return 0.0;
  NormalSource normal(seed);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (active[i]) values[i] += sigma * normal();
  }
  return sigma;
}

Sinogram add_noise(const Sinogram& sin, double level, std::uint64_t seed) {
  Sinogram out = sin;
  add_noise_inplace(out.values, out.mask, level, seed);
  return out;
}

}  // namespace ffpat
