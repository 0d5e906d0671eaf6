#ifndef FFPAT_RADON_MASK_HPP
#define FFPAT_RADON_MASK_HPP

#include <cstdint>
#include <vector>

#include "ffpat/core/linear_operator.hpp"
#include "ffpat/fields/grid.hpp"
#include "ffpat/radon/sinogram.hpp"

namespace ffpat {

/// 0/1 pattern of active samples for `spec` on `geom`.
std::vector<std::uint8_t> mask_pattern(const SinogramGeom& geom, const MaskSpec& spec);

/// Zeroes inactive samples and intersects the stored mask. Idempotent.
Sinogram apply_mask(const Sinogram& sin, const MaskSpec& spec);

/// Multiplication by the mask pattern, self-adjoint on `space`.
OperatorPtr mask_operator(const SinogramGeom& geom, const MaskSpec& spec,
                          const VectorSpace& space);

/// M X from image_space(grid) into `range`. The mask is folded into both
/// the map and its transpose, so the adjoint is correct even when `range`
/// carries a non-diagonal metric such as Λ.
OperatorPtr masked_radon_operator(const Grid& grid, const SinogramGeom& geom,
                                  const MaskSpec& spec, const VectorSpace& range);

}  // namespace ffpat

#endif  // FFPAT_RADON_MASK_HPP
