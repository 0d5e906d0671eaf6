#include "ffpat/wave/wave_config.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "ffpat/core/errors.hpp"

namespace ffpat {

void WaveConfig::validate() const {
  if (!(final_time > 0.0) || steps < 1) {
    throw ConfigError("wave: final time must be > 0 and steps >= 1");
  }
  const Grid& g = medium.grid;
  if (g.n < 3) throw ConfigError("wave: simulation grid is empty");
  if (!(medium.c.min() > 0.0)) throw ConfigError("wave: sound speed must be positive");
  if (!(medium.a.min() >= 0.0)) throw ConfigError("wave: damping must be nonnegative");
  if (!medium.c.all_finite() || !medium.a.all_finite()) {
    throw ConfigError("wave: medium has non-finite values");
  }

  const double h = g.spacing();
  const double k_nyquist = std::numbers::pi / h;
  const double courant = medium.c_max() * dt() * k_nyquist;
  if (!(courant < std::numbers::pi)) {
    std::ostringstream os;
    os << "wave: stability bound violated, c_max*dt*k_nyquist = " << courant << " >= pi (dt="
       << dt() << ", h=" << h << ")";
    throw ConfigError(os.str());
  }

  if (require_free_space) {
    // c - 1 is supported in Ω, so the exterior speed bounds the front once it leaves Ω.
    double c_exterior = 0.0;
    for (int iy = 0; iy < g.n; ++iy) {
      for (int ix = 0; ix < g.n; ++ix) {
        const double x = g.coord(ix);
        const double y = g.coord(iy);
        if (x * x + y * y >= 1.0) c_exterior = std::max(c_exterior, medium.c(ix, iy));
      }
    }
    const double reach = 1.0 + c_exterior * final_time;
    if (reach > g.half_width + 1e-9) {
      std::ostringstream os;
      os << "wave: waves reach radius " << reach << " by T=" << final_time
         << ", beyond the simulation half width " << g.half_width;
      throw ConfigError(os.str());
    }
  }
}

std::vector<std::string> WaveConfig::warnings() const {
  std::vector<std::string> out;
  if (final_time <= kOmegaDiameter) {
    out.push_back("final time " + std::to_string(final_time) +
                  " does not exceed diam(Ω) = 2; time-reversal inversion is not guaranteed");
  }
  return out;
}

}  // namespace ffpat
