#ifndef FFPAT_WAVE_WAVE_CONFIG_HPP
#define FFPAT_WAVE_WAVE_CONFIG_HPP

#include <string>
#include <vector>

#include "ffpat/fields/phantom.hpp"

namespace ffpat {

/// Time-stepping setup for c^-2 u_tt + a u_t - Δu = 0 on the simulation grid.
struct WaveConfig {
  Medium medium;
  double final_time = 3.0;
  int steps = 300;
  /// Scalar sources start from (f, -c^2 a f) instead of (f, 0).
  bool source_coupling = true;
  /// Reject setups where a wave leaving the unit disc could wrap around the
  /// periodic box before final_time.
  bool require_free_space = true;

  double dt() const noexcept { return final_time / steps; }

  /// Throws ConfigError on a non-positive step, violated stability bound
  /// c_max dt k_nyquist < π, or an undersized periodic box.
  void validate() const;

  /// Non-fatal issues, e.g. final_time <= diam Ω = 2.
  std::vector<std::string> warnings() const;
};

/// Diameter of the unit disc Ω.
inline constexpr double kOmegaDiameter = 2.0;

}  // namespace ffpat

#endif  // FFPAT_WAVE_WAVE_CONFIG_HPP
