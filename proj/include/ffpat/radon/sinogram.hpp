#ifndef FFPAT_RADON_SINOGRAM_HPP
#define FFPAT_RADON_SINOGRAM_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ffpat/core/vector_space.hpp"
#include "ffpat/fields/grid.hpp"

namespace ffpat {

/// Angle convention: θ measured from the x1-axis, detector coordinate s
/// along (cos θ, sin θ), integration along (-sin θ, cos θ).
inline constexpr const char* kRadonConvention =
    "theta from x1-axis; s along (cos,sin); integrate along (-sin,cos)";

/// Parallel-beam geometry: n_theta angles evenly spaced in [0°, 180°) and an
/// odd number of detector samples centred on s = 0.
struct SinogramGeom {
  int n_theta = 0;
  int n_s = 0;
  double ds = 0.0;

  /// ds = grid spacing, detector range covering [-L√2, L√2].
  static SinogramGeom for_grid(const Grid& grid, int n_theta);

  double angle(int i) const noexcept;          // radians
  double angle_degrees(int i) const noexcept;
  double offset(int j) const noexcept { return (j - (n_s - 1) / 2) * ds; }
  double angle_step() const noexcept;          // π / n_theta
  std::size_t size() const noexcept { return static_cast<std::size_t>(n_theta) * n_s; }

  /// Throws ConfigError unless n_theta >= 1, n_s odd and ds > 0.
  void validate() const;

  /// Shape {n_theta, n_s} with cell measure dθ ds.
  VectorSpace space() const;
};

/// Active data region: |s| >= exterior_radius and θ in [theta_min, theta_max] (degrees).
struct MaskSpec {
  double exterior_radius = 1.0;
  double theta_min_deg = 0.0;
  double theta_max_deg = 180.0;

  void validate() const;
  bool active(double theta_deg, double s) const noexcept;
  std::string describe() const;
};

/// Values indexed [angle][offset] (angle-major), plus the active-sample mask.
struct Sinogram {
  SinogramGeom geom;
  Vector values;
  std::vector<std::uint8_t> mask;

  Sinogram() = default;
  explicit Sinogram(const SinogramGeom& g);
  Sinogram(const SinogramGeom& g, Vector v);

  double& at(int i, int j) { return values[static_cast<std::size_t>(i) * geom.n_s + j]; }
  double at(int i, int j) const { return values[static_cast<std::size_t>(i) * geom.n_s + j]; }
};

}  // namespace ffpat

#endif  // FFPAT_RADON_SINOGRAM_HPP
