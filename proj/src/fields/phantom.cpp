#include "ffpat/fields/phantom.hpp"

#include <cmath>
#include <string>

#include "ffpat/core/errors.hpp"

namespace ffpat {

void PhantomSpec::validate() const {
  for (const Bump& b : bumps) {
    if (!(b.radius > 0.0)) throw ConfigError("phantom: bump radius must be positive");
    if (std::hypot(b.cx, b.cy) + b.radius >= kPhantomSupportRadius) {
      throw ConfigError("phantom: bump at (" + std::to_string(b.cx) + "," + std::to_string(b.cy) +
                        ") radius " + std::to_string(b.radius) + " leaves |x| < 0.95");
    }
  }
}

double bump_profile(BumpProfile profile, double r) {
  if (r >= 1.0) return 0.0;
  switch (profile) {
    case BumpProfile::Smooth:
      return std::exp(1.0 - 1.0 / (1.0 - r * r));
    case BumpProfile::GaussianTruncated:
      return std::exp(-4.5 * r * r);
  }
  return 0.0;
}

Field2D build_phantom(const PhantomSpec& spec, const Grid& grid) {
  spec.validate();
  Field2D field(grid);
  for (int iy = 0; iy < grid.n; ++iy) {
    const double y = grid.coord(iy);
    for (int ix = 0; ix < grid.n; ++ix) {
      const double x = grid.coord(ix);
      double sum = 0.0;
      for (const Bump& b : spec.bumps) {
        const double r = std::hypot(x - b.cx, y - b.cy) / b.radius;
        sum += b.amplitude * bump_profile(b.profile, r);
      }
      field(ix, iy) = sum;
    }
  }
  switch (spec.target) {
    case PhantomTarget::Source:
      break;
    case PhantomTarget::SpeedPerturbation:
      for (double& v : field.values()) v += 1.0;
      break;
    case PhantomTarget::Attenuation:
      for (double& v : field.values()) v = std::max(v, 0.0);
      break;
  }
  return field;
}

DefaultPhantoms default_phantoms() {
  DefaultPhantoms p;
  p.source.target = PhantomTarget::Source;
  p.source.bumps = {{-0.3, 0.2, 0.25, 1.0, BumpProfile::Smooth},
                    {0.3, 0.3, 0.2, 0.8, BumpProfile::Smooth},
                    {0.1, -0.35, 0.3, 0.6, BumpProfile::Smooth}};
  p.speed.target = PhantomTarget::SpeedPerturbation;
  p.speed.bumps = {{0.0, 0.0, 0.8, 0.2, BumpProfile::Smooth}};
  p.attenuation.target = PhantomTarget::Attenuation;
  p.attenuation.bumps = {{0.1, 0.1, 0.7, 0.5, BumpProfile::Smooth}};
  return p;
}

Medium::Medium(Field2D speed, Field2D damping)
    : grid(speed.grid()), c(std::move(speed)), a(std::move(damping)) {
  if (!(a.grid() == grid)) throw StructuralError("medium: c and a on different grids");
}

void Medium::validate() const {
  for (int iy = 0; iy < grid.n; ++iy) {
    const double y = grid.coord(iy);
    for (int ix = 0; ix < grid.n; ++ix) {
      const double x = grid.coord(ix);
      const double cv = c(ix, iy);
      const double av = a(ix, iy);
      if (!(cv > 0.0) || !std::isfinite(cv)) throw ConfigError("medium: sound speed must be > 0");
      if (!(av >= 0.0) || !std::isfinite(av)) throw ConfigError("medium: damping must be >= 0");
      if (x * x + y * y >= 1.0 && (std::abs(cv - 1.0) > 1e-12 || av > 1e-12)) {
        throw ConfigError("medium: c - 1 and a must vanish outside the unit disc");
      }
    }
  }
}

Medium default_medium(const Grid& grid) {
  const DefaultPhantoms p = default_phantoms();
  return Medium(build_phantom(p.speed, grid), build_phantom(p.attenuation, grid));
}

Medium constant_medium(const Grid& grid, double speed, double damping) {
  return Medium(Field2D(grid, speed), Field2D(grid, damping));
}

}  // namespace ffpat
