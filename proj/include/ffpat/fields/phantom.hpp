#ifndef FFPAT_FIELDS_PHANTOM_HPP
#define FFPAT_FIELDS_PHANTOM_HPP

#include <vector>

#include "ffpat/fields/grid.hpp"

namespace ffpat {

enum class BumpProfile {
  Smooth,             // exp(1 - 1/(1 - r^2)), r scaled to the bump radius
  GaussianTruncated,  // exp(-4.5 r^2), cut at r = 1
};

enum class PhantomTarget { Source, SpeedPerturbation, Attenuation };

struct Bump {
  double cx = 0.0;
  double cy = 0.0;
  double radius = 0.1;
  double amplitude = 1.0;
  BumpProfile profile = BumpProfile::Smooth;
};

struct PhantomSpec {
  std::vector<Bump> bumps;
  PhantomTarget target = PhantomTarget::Source;

  /// Throws ConfigError unless every bump support lies in |x| < 0.95.
  void validate() const;
};

/// Every phantom bump must stay inside this radius.
inline constexpr double kPhantomSupportRadius = 0.95;

double bump_profile(BumpProfile profile, double r);

/// Sum of bumps; 1 + sum for speed perturbations, clamped at 0 for attenuation.
Field2D build_phantom(const PhantomSpec& spec, const Grid& grid);

struct DefaultPhantoms {
  PhantomSpec source;
  PhantomSpec speed;
  PhantomSpec attenuation;
};

DefaultPhantoms default_phantoms();

/// Sound speed and damping sampled on one grid.
struct Medium {
  Grid grid;
  Field2D c;
  Field2D a;

  Medium() = default;
  Medium(Field2D speed, Field2D damping);

  double c_max() const { return c.max(); }
  double c_min() const { return c.min(); }

  /// Throws ConfigError when c <= 0, a < 0, or c - 1, a are nonzero outside |x| < 1.
  void validate() const;
};

/// Medium built from the default speed and attenuation phantoms on `grid`.
Medium default_medium(const Grid& grid);

/// Homogeneous medium c = speed, a = damping everywhere.
Medium constant_medium(const Grid& grid, double speed, double damping);

}  // namespace ffpat

#endif  // FFPAT_FIELDS_PHANTOM_HPP
