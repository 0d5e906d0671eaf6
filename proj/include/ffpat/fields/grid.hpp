#ifndef FFPAT_FIELDS_GRID_HPP
#define FFPAT_FIELDS_GRID_HPP

#include <cstddef>
#include <span>
#include <string>

#include "ffpat/core/vector_space.hpp"

namespace ffpat {

/// Square node grid covering [-L, L]^2 with both endpoints included,
/// spacing h = 2L / (n - 1).
struct Grid {
  int n = 0;
  double half_width = 1.0;

  Grid() = default;
  Grid(int n_, double half_width_);

  double spacing() const noexcept { return 2.0 * half_width / (n - 1); }
  double coord(int i) const noexcept { return -half_width + i * spacing(); }
  std::size_t size() const noexcept { return static_cast<std::size_t>(n) * n; }
  std::size_t index(int ix, int iy) const noexcept {
    return static_cast<std::size_t>(iy) * n + ix;
  }

  bool operator==(const Grid& other) const noexcept {
    return n == other.n && half_width == other.half_width;
  }

  std::string describe() const;
};

/// Offset (in nodes) of `inner` inside `outer` when both grids share nodes,
/// or -1 when they are not nested.
int nested_offset(const Grid& outer, const Grid& inner);

/// Values of a real field on a Grid, row-major with rows along x2:
/// value(ix, iy) sits at (coord(ix), coord(iy)).
class Field2D {
 public:
  Field2D() = default;
  explicit Field2D(const Grid& grid, double fill = 0.0);
  Field2D(const Grid& grid, Vector values);

  const Grid& grid() const noexcept { return grid_; }
  const Vector& values() const noexcept { return values_; }
  Vector& values() noexcept { return values_; }
  std::span<const double> span() const noexcept { return values_; }
  std::span<double> span() noexcept { return values_; }

  double& operator()(int ix, int iy) noexcept { return values_[grid_.index(ix, iy)]; }
  double operator()(int ix, int iy) const noexcept { return values_[grid_.index(ix, iy)]; }

  double min() const;
  double max() const;
  bool all_finite() const;

 private:
  Grid grid_;
  Vector values_;
};

/// Relative l2 error ||x - ref|| / ||ref|| over all samples.
double rel_l2_error(std::span<const double> x, std::span<const double> ref);
double rel_l2_error(const Field2D& x, const Field2D& ref);

/// 1 strictly inside the unit disc, 0 elsewhere.
Field2D unit_disc_indicator(const Grid& grid);

}  // namespace ffpat

#endif  // FFPAT_FIELDS_GRID_HPP
