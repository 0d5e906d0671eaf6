#include "ffpat/radon/transform.hpp"

#include <algorithm>
#include <cmath>

#include "ffpat/core/errors.hpp"

namespace ffpat {

namespace {

// Visits every (node, weight) pair of the bilinear stencil of each sample on
// every ray. Forward and transpose share this walk so they stay exact
// transposes of each other.
template <typename Visit>
void for_each_ray_sample(const Grid& grid, const SinogramGeom& geom, Visit&& visit) {
  const int n = grid.n;
  const double h = grid.spacing();
  const double L = grid.half_width;
  const double reach = L + h;
  for (int i = 0; i < geom.n_theta; ++i) {
    const double th = geom.angle(i);
    const double ct = std::cos(th);
    const double st = std::sin(th);
    for (int j = 0; j < geom.n_s; ++j) {
      const double s = geom.offset(j);
      const double x0 = s * ct;
      const double y0 = s * st;
      // Point at parameter t: (x0 - t st, y0 + t ct). Clip t to the padded box.
      double tmin = -1e300;
      double tmax = 1e300;
      auto clip = [&](double base, double dir) {
        if (std::abs(dir) < 1e-12) {
          if (std::abs(base) > reach) tmax = tmin - 1.0;
          return;
        }
        double a = (-reach - base) / dir;
        double b = (reach - base) / dir;
        if (a > b) std::swap(a, b);
        tmin = std::max(tmin, a);
        tmax = std::min(tmax, b);
      };
      clip(x0, -st);
      clip(y0, ct);
      if (tmin > tmax) continue;
      const long kmin = static_cast<long>(std::ceil(tmin / h));
      const long kmax = static_cast<long>(std::floor(tmax / h));
      const std::size_t ray = static_cast<std::size_t>(i) * geom.n_s + j;
      const double fx0 = (x0 + L) / h;
      const double fy0 = (y0 + L) / h;
      for (long k = kmin; k <= kmax; ++k) {
        // Shift by one cell so the truncating cast acts as floor on [-1, n].
        const double fx = fx0 - static_cast<double>(k) * st + 1.0;
        const double fy = fy0 + static_cast<double>(k) * ct + 1.0;
        const int ix = static_cast<int>(fx) - 1;
        const int iy = static_cast<int>(fy) - 1;
        const double wx = fx - (ix + 1);
        const double wy = fy - (iy + 1);
        if (ix >= 0 && iy >= 0 && ix + 1 < n && iy + 1 < n) {
          const std::size_t base = static_cast<std::size_t>(iy) * n + ix;
          visit(ray, base, (1.0 - wx) * (1.0 - wy) * h);
          visit(ray, base + 1, wx * (1.0 - wy) * h);
          visit(ray, base + n, (1.0 - wx) * wy * h);
          visit(ray, base + n + 1, wx * wy * h);
          continue;
        }
        const bool x0_in = ix >= 0 && ix < n;
        const bool x1_in = ix + 1 >= 0 && ix + 1 < n;
        if (iy >= 0 && iy < n) {
          const std::size_t row = static_cast<std::size_t>(iy) * n;
          if (x0_in) visit(ray, row + ix, (1.0 - wx) * (1.0 - wy) * h);
          if (x1_in) visit(ray, row + ix + 1, wx * (1.0 - wy) * h);
        }
        if (iy + 1 >= 0 && iy + 1 < n) {
          const std::size_t row = static_cast<std::size_t>(iy + 1) * n;
          if (x0_in) visit(ray, row + ix, (1.0 - wx) * wy * h);
          if (x1_in) visit(ray, row + ix + 1, wx * wy * h);
        }
      }
    }
  }
}

}  // namespace

void radon_apply(const Grid& grid, const SinogramGeom& geom, std::span<const double> img,
                 std::span<double> out) {
  if (img.size() != grid.size() || out.size() != geom.size()) {
    throw StructuralError("radon: array sizes do not match grid and geometry");
  }
  std::fill(out.begin(), out.end(), 0.0);
  for_each_ray_sample(grid, geom, [&](std::size_t ray, std::size_t node, double w) {
    out[ray] += w * img[node];
  });
}

void radon_transpose(const Grid& grid, const SinogramGeom& geom, std::span<const double> sin,
                     std::span<double> out) {
  if (out.size() != grid.size() || sin.size() != geom.size()) {
    throw StructuralError("radon: array sizes do not match grid and geometry");
  }
  std::fill(out.begin(), out.end(), 0.0);
  for_each_ray_sample(grid, geom, [&](std::size_t ray, std::size_t node, double w) {
    out[node] += w * sin[ray];
  });
}

Sinogram radon_forward(const Field2D& img, const SinogramGeom& geom) {
  geom.validate();
  Sinogram out(geom);
  radon_apply(img.grid(), geom, img.span(), out.values);
  return out;
}

Field2D backproject(const Sinogram& sin, const Grid& grid) {
  Field2D out(grid);
  radon_transpose(grid, sin.geom, sin.values, out.span());
  return out;
}

VectorSpace image_space(const Grid& grid) {
  const double h = grid.spacing();
  return VectorSpace({static_cast<std::size_t>(grid.n), static_cast<std::size_t>(grid.n)}, h * h);
}

OperatorPtr radon_operator(const Grid& grid, const SinogramGeom& geom, const VectorSpace& range) {
  geom.validate();
  if (range.size() != geom.size()) throw StructuralError("radon: range space has wrong size");
  return from_transpose(
      image_space(grid), range,
      [grid, geom](std::span<const double> x, std::span<double> y) {
        radon_apply(grid, geom, x, y);
      },
      [grid, geom](std::span<const double> y, std::span<double> x) {
        radon_transpose(grid, geom, y, x);
      },
      "X");
}

OperatorPtr radon_operator(const Grid& grid, const SinogramGeom& geom) {
  return radon_operator(grid, geom, geom.space());
}

}  // namespace ffpat
