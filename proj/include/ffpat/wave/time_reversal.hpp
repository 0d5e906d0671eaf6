#ifndef FFPAT_WAVE_TIME_REVERSAL_HPP
#define FFPAT_WAVE_TIME_REVERSAL_HPP

#include <cstdint>
#include <vector>

#include "ffpat/wave/wave_operators.hpp"

namespace ffpat {

/// 𝒯_T h = (v(., 0), v_t(., 0)) for c^-2 v_tt - a v_t - Δv = 0 with
/// v(T) = h, v_t(T) = 0. Input and output on the simulation grid.
InitialPair time_reverse(const WaveModel& model, const Field2D& h);

/// U_T f = u(., T) restricted to |x| >= 1, for initial data (f1, f2) given
/// on the object grid. Returned on the simulation grid.
Field2D forward_U(const WaveModel& model, const InitialPair& f);

/// V_T g = (P × Q) 𝒯_T E g for exterior data g on the simulation grid
/// (values inside the unit disc are ignored). Returned on the object grid.
InitialPair neumann_V(const WaveModel& model, const Field2D& g);

/// |∇f1|^2_{L2} + |f2|^2_{L2(c^-2)} on the object grid (forward differences).
double energy_norm_squared(const WaveModel& model, const InitialPair& f);

struct ContractionReport {
  double estimate = 0.0;       // ratio |K x| / |x| at the last iteration
  double max_ratio = 0.0;      // largest ratio seen
  std::vector<double> ratios;  // per iteration
};

/// Power-iteration estimate of ||I - λ V_T U_T|| in the energy norm,
/// started from a smooth random pair supported in Ω.
ContractionReport estimate_contraction(const WaveModel& model, double lambda, int iters,
                                       std::uint64_t seed);

/// Smooth random pair supported in Ω (used as a power-iteration start).
InitialPair smooth_random_pair(const Grid& object_grid, std::uint64_t seed);

}  // namespace ffpat

#endif  // FFPAT_WAVE_TIME_REVERSAL_HPP
