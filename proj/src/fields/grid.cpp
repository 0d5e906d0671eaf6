#include "ffpat/fields/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ffpat/core/errors.hpp"

namespace ffpat {

Grid::Grid(int n_, double half_width_) : n(n_), half_width(half_width_) {
  if (n < 3) throw ConfigError("grid: need at least 3 samples per axis, got " + std::to_string(n));
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw ConfigError("grid: half width must be positive");
  }
}

std::string Grid::describe() const {
  std::ostringstream os;
  os << n << "x" << n << " on [" << -half_width << "," << half_width << "]^2, h=" << spacing();
  return os.str();
}

int nested_offset(const Grid& outer, const Grid& inner) {
  const double h = outer.spacing();
  if (std::abs(inner.spacing() - h) > 1e-12 * h) return -1;
  const double shift = (outer.half_width - inner.half_width) / h;
  const double rounded = std::round(shift);
  if (std::abs(shift - rounded) > 1e-9 || rounded < 0) return -1;
  if (static_cast<int>(rounded) + inner.n > outer.n) return -1;
  return static_cast<int>(rounded);
}

Field2D::Field2D(const Grid& grid, double fill) : grid_(grid), values_(grid.size(), fill) {}

Field2D::Field2D(const Grid& grid, Vector values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw StructuralError("field: " + std::to_string(values_.size()) + " values for grid " +
                          grid_.describe());
  }
}

double Field2D::min() const { return *std::min_element(values_.begin(), values_.end()); }
double Field2D::max() const { return *std::max_element(values_.begin(), values_.end()); }

bool Field2D::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

double rel_l2_error(std::span<const double> x, std::span<const double> ref) {
  if (x.size() != ref.size()) throw StructuralError("rel_l2_error: size mismatch");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += (x[i] - ref[i]) * (x[i] - ref[i]);
    den += ref[i] * ref[i];
  }
  if (den == 0.0) throw NumericalError("rel_l2_error: reference has zero norm");
  return std::sqrt(num / den);
}

double rel_l2_error(const Field2D& x, const Field2D& ref) {
  if (!(x.grid() == ref.grid())) throw StructuralError("rel_l2_error: fields on different grids");
  return rel_l2_error(x.span(), ref.span());
}

Field2D unit_disc_indicator(const Grid& grid) {
  Field2D chi(grid);
  for (int iy = 0; iy < grid.n; ++iy) {
    const double y = grid.coord(iy);
    for (int ix = 0; ix < grid.n; ++ix) {
      const double x = grid.coord(ix);
      chi(ix, iy) = (x * x + y * y < 1.0) ? 1.0 : 0.0;
    }
  }
  return chi;
}

}  // namespace ffpat
