#include "ffpat/fields/transfer.hpp"

#include <algorithm>
#include <cmath>

#include "ffpat/core/errors.hpp"

namespace ffpat {

double sample_bilinear(const Field2D& field, double x, double y) {
  const Grid& g = field.grid();
  const double h = g.spacing();
  const double fx = (x + g.half_width) / h;
  const double fy = (y + g.half_width) / h;
  if (fx < 0.0 || fy < 0.0 || fx > g.n - 1 || fy > g.n - 1) return 0.0;
  int ix = std::min(static_cast<int>(fx), g.n - 2);
  int iy = std::min(static_cast<int>(fy), g.n - 2);
  const double tx = fx - ix;
  const double ty = fy - iy;
  return (1 - tx) * (1 - ty) * field(ix, iy) + tx * (1 - ty) * field(ix + 1, iy) +
         (1 - tx) * ty * field(ix, iy + 1) + tx * ty * field(ix + 1, iy + 1);
}

Field2D embed(const Field2D& src, const Grid& dst_grid, double background) {
  const Grid& sg = src.grid();
  if (dst_grid.half_width < sg.half_width) {
    throw StructuralError("embed: destination grid " + dst_grid.describe() +
                          " is smaller than source " + sg.describe());
  }
  Field2D dst(dst_grid, background);
  const int offset = nested_offset(dst_grid, sg);
  if (offset >= 0) {
    for (int iy = 0; iy < sg.n; ++iy) {
      for (int ix = 0; ix < sg.n; ++ix) dst(ix + offset, iy + offset) = src(ix, iy);
    }
    return dst;
  }
  const double eps = 1e-12 * sg.half_width;
  for (int iy = 0; iy < dst_grid.n; ++iy) {
    const double y = dst_grid.coord(iy);
    if (std::abs(y) > sg.half_width + eps) continue;
    for (int ix = 0; ix < dst_grid.n; ++ix) {
      const double x = dst_grid.coord(ix);
      if (std::abs(x) > sg.half_width + eps) continue;
      dst(ix, iy) = sample_bilinear(src, x, y);
    }
  }
  return dst;
}

Field2D restrict_to(const Field2D& src, const Grid& dst_grid, bool mask_unit_disc) {
  const Grid& sg = src.grid();
  if (dst_grid.half_width > sg.half_width) {
    throw StructuralError("restrict: destination grid " + dst_grid.describe() +
                          " is larger than source " + sg.describe());
  }
  Field2D dst(dst_grid);
  const int offset = nested_offset(sg, dst_grid);
  for (int iy = 0; iy < dst_grid.n; ++iy) {
    const double y = dst_grid.coord(iy);
    for (int ix = 0; ix < dst_grid.n; ++ix) {
      const double x = dst_grid.coord(ix);
      if (mask_unit_disc && x * x + y * y >= 1.0) continue;
      dst(ix, iy) = offset >= 0 ? src(ix + offset, iy + offset) : sample_bilinear(src, x, y);
    }
  }
  return dst;
}

OperatorPtr embed_operator(const Grid& inner, const Grid& outer) {
  if (nested_offset(outer, inner) < 0) {
    throw StructuralError("embed: " + inner.describe() + " is not nested in " + outer.describe());
  }
  auto space = [](const Grid& g) {
    const double h = g.spacing();
    return VectorSpace({static_cast<std::size_t>(g.n), static_cast<std::size_t>(g.n)}, h * h);
  };
  return from_transpose(
      space(inner), space(outer),
      [inner, outer](std::span<const double> x, std::span<double> y) {
        const Field2D out = embed(Field2D(inner, Vector(x.begin(), x.end())), outer);
        std::copy(out.values().begin(), out.values().end(), y.begin());
      },
      [inner, outer](std::span<const double> y, std::span<double> x) {
        const Field2D out = restrict_to(Field2D(outer, Vector(y.begin(), y.end())), inner);
        std::copy(out.values().begin(), out.values().end(), x.begin());
      },
      "E");
}

}  // namespace ffpat
