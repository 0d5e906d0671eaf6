#include <cmath>
#include <numbers>
#include <sstream>

#include "ffpat/core/errors.hpp"
#include "ffpat/radon/sinogram.hpp"

namespace ffpat {

SinogramGeom SinogramGeom::for_grid(const Grid& grid, int n_theta) {
  SinogramGeom g;
  g.n_theta = n_theta;
  g.ds = grid.spacing();
  const int half = static_cast<int>(std::ceil(grid.half_width * std::numbers::sqrt2 / g.ds - 1e-9));
  g.n_s = 2 * half + 1;
  g.validate();
  return g;
}

double SinogramGeom::angle(int i) const noexcept { return std::numbers::pi * i / n_theta; }
double SinogramGeom::angle_degrees(int i) const noexcept { return 180.0 * i / n_theta; }
double SinogramGeom::angle_step() const noexcept { return std::numbers::pi / n_theta; }

void SinogramGeom::validate() const {
  if (n_theta < 1) throw ConfigError("sinogram: need at least one angle");
  if (n_s < 1 || n_s % 2 == 0) throw ConfigError("sinogram: detector count must be odd");
  if (!(ds > 0.0)) throw ConfigError("sinogram: detector pitch must be positive");
}

VectorSpace SinogramGeom::space() const {
  return VectorSpace({static_cast<std::size_t>(n_theta), static_cast<std::size_t>(n_s)},
                     angle_step() * ds);
}

void MaskSpec::validate() const {
  if (!(exterior_radius >= 0.0)) throw ConfigError("mask: exterior radius must be >= 0");
  if (!(theta_min_deg < theta_max_deg)) throw ConfigError("mask: need theta_min < theta_max");
  if (theta_min_deg < 0.0 || theta_max_deg > 180.0) {
    throw ConfigError("mask: angular range must lie in [0, 180] degrees");
  }
}

bool MaskSpec::active(double theta_deg, double s) const noexcept {
  constexpr double tol = 1e-9;
  return std::abs(s) >= exterior_radius - tol && theta_deg >= theta_min_deg - tol &&
         theta_deg <= theta_max_deg + tol;
}

std::string MaskSpec::describe() const {
  std::ostringstream os;
  os << "|s|>=" << exterior_radius << ", theta in [" << theta_min_deg << "," << theta_max_deg
     << "] deg";
  return os.str();
}

Sinogram::Sinogram(const SinogramGeom& g) : geom(g), values(g.size(), 0.0), mask(g.size(), 1) {}

Sinogram::Sinogram(const SinogramGeom& g, Vector v)
    : geom(g), values(std::move(v)), mask(g.size(), 1) {
  if (values.size() != g.size()) throw StructuralError("sinogram: value count mismatch");
}

}  // namespace ffpat
