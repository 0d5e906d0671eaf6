#ifndef FFPAT_EXPERIMENT_NOISE_HPP
#define FFPAT_EXPERIMENT_NOISE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "ffpat/radon/sinogram.hpp"

namespace ffpat {

/// Noise scale used by add_noise: level times the mean of |values| over
/// active samples (0 when no sample is active).
double noise_sigma(std::span<const double> values, std::span<const std::uint8_t> active,
                   double level);

/// Adds i.i.d. N(0, sigma^2) to active samples in place, sigma from
/// noise_sigma. Inactive samples are untouched. Returns sigma.
double add_noise_inplace(std::span<double> values, std::span<const std::uint8_t> active,
                         double level, std::uint64_t seed);

/// Sinogram version; masked samples stay exactly zero. level = 0 returns
/// the input unchanged.
Sinogram add_noise(const Sinogram& sin, double level, std::uint64_t seed);

}  // namespace ffpat

#endif  // FFPAT_EXPERIMENT_NOISE_HPP
