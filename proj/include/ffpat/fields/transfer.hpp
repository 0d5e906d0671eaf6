#ifndef FFPAT_FIELDS_TRANSFER_HPP
#define FFPAT_FIELDS_TRANSFER_HPP

#include "ffpat/core/linear_operator.hpp"
#include "ffpat/fields/grid.hpp"

namespace ffpat {

/// Places `src` into the larger grid `dst_grid`. Shared nodes are copied on
/// nested grids; otherwise values are bilinearly interpolated. Nodes outside
/// the source square receive `background`.
Field2D embed(const Field2D& src, const Grid& dst_grid, double background = 0.0);

/// Samples `src` on the smaller grid `dst_grid` (copy on nested grids,
/// bilinear otherwise). With `mask_unit_disc` the result is multiplied by
/// the indicator of |x| < 1.
Field2D restrict_to(const Field2D& src, const Grid& dst_grid, bool mask_unit_disc = false);

/// Bilinear sample of a field at a physical point; 0 outside the grid square.
double sample_bilinear(const Field2D& field, double x, double y);

/// embed (background 0) between nested grids as an operator on L2 spaces
/// with cell measure h^2; its adjoint is restrict_to without the disc mask.
/// Throws StructuralError when the grids are not nested.
OperatorPtr embed_operator(const Grid& inner, const Grid& outer);

}  // namespace ffpat

#endif  // FFPAT_FIELDS_TRANSFER_HPP
