#ifndef FFPAT_RECON_GRADIENT_HPP
#define FFPAT_RECON_GRADIENT_HPP

#include "ffpat/core/linear_operator.hpp"
#include "ffpat/fields/grid.hpp"

namespace ffpat {

/// Forward differences (not divided by h). Channel d1 differences along x1
/// (the ix index), d2 along x2; both are zero on the last column/row.
struct GradientPair {
  Field2D d1;
  Field2D d2;
};

GradientPair gradient_D(const Field2D& img);

/// Exact negative transpose of gradient_D.
Field2D divergence(const GradientPair& q);

/// Flat kernels: `q` holds channel d1 followed by channel d2.
void gradient_apply(const Grid& grid, std::span<const double> img, std::span<double> q);
void divergence_apply(const Grid& grid, std::span<const double> q, std::span<double> img);

/// D from `domain` (any space of the grid's shape) into two stacked copies
/// of the image space with cell measure h^2. The adjoint respects the
/// domain's weights, so on L2(c^-2) it is c^2 (-div).
OperatorPtr gradient_operator(const Grid& grid, const VectorSpace& domain);

}  // namespace ffpat

#endif  // FFPAT_RECON_GRADIENT_HPP
