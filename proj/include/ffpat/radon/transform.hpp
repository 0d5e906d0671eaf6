#ifndef FFPAT_RADON_TRANSFORM_HPP
#define FFPAT_RADON_TRANSFORM_HPP

#include "ffpat/core/linear_operator.hpp"
#include "ffpat/fields/grid.hpp"
#include "ffpat/radon/sinogram.hpp"

namespace ffpat {

/// Ray-driven line integrals: along each line the image is sampled with
/// bilinear interpolation at step h (nodes outside the grid count as zero)
/// and the samples are summed times h. The mask of the result is all-true.
Sinogram radon_forward(const Field2D& img, const SinogramGeom& geom);

/// Plain transpose of radon_forward's stencil (uniform inner products).
Field2D backproject(const Sinogram& sin, const Grid& grid);

/// Raw kernels on flat arrays, used by the operator wrappers.
void radon_apply(const Grid& grid, const SinogramGeom& geom, std::span<const double> img,
                 std::span<double> out);
void radon_transpose(const Grid& grid, const SinogramGeom& geom, std::span<const double> sin,
                     std::span<double> out);

/// Image space on `grid` with cell measure h^2.
VectorSpace image_space(const Grid& grid);

/// X between image_space(grid) and `range` (any space of the sinogram's
/// shape). The adjoint is taken with respect to both declared inner products.
OperatorPtr radon_operator(const Grid& grid, const SinogramGeom& geom, const VectorSpace& range);
OperatorPtr radon_operator(const Grid& grid, const SinogramGeom& geom);

}  // namespace ffpat

#endif  // FFPAT_RADON_TRANSFORM_HPP
