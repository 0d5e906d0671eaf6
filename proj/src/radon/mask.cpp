#include "ffpat/radon/mask.hpp"

#include "ffpat/core/errors.hpp"
#include "ffpat/radon/transform.hpp"

namespace ffpat {

std::vector<std::uint8_t> mask_pattern(const SinogramGeom& geom, const MaskSpec& spec) {
  spec.validate();
  std::vector<std::uint8_t> m(geom.size());
  for (int i = 0; i < geom.n_theta; ++i) {
    const double deg = geom.angle_degrees(i);
    for (int j = 0; j < geom.n_s; ++j) {
      m[static_cast<std::size_t>(i) * geom.n_s + j] = spec.active(deg, geom.offset(j)) ? 1 : 0;
    }
  }
  return m;
}

Sinogram apply_mask(const Sinogram& sin, const MaskSpec& spec) {
  Sinogram out = sin;
  const auto m = mask_pattern(sin.geom, spec);
  if (out.mask.size() != m.size()) out.mask.assign(m.size(), 1);
  for (std::size_t k = 0; k < m.size(); ++k) {
    out.mask[k] = out.mask[k] && m[k];
    if (!out.mask[k]) out.values[k] = 0.0;
  }
  return out;
}

OperatorPtr mask_operator(const SinogramGeom& geom, const MaskSpec& spec,
                          const VectorSpace& space) {
  if (space.size() != geom.size()) throw StructuralError("mask: space has wrong size");
  const auto m = mask_pattern(geom, spec);
  Vector d(m.begin(), m.end());
  auto fn = [d](std::span<const double> x, std::span<double> y) {
    for (std::size_t k = 0; k < d.size(); ++k) y[k] = d[k] * x[k];
  };
  if (space.metric()) {
    // Under a metric G the adjoint of M is G^-1 M G, which is not M; that
    // case is handled by folding M into the forward map (see recon).
    throw StructuralError("mask: operator form needs a diagonal inner product");
  }
  return make_operator(space, space, fn, fn, "M");
}

OperatorPtr masked_radon_operator(const Grid& grid, const SinogramGeom& geom,
                                  const MaskSpec& spec, const VectorSpace& range) {
  geom.validate();
  if (range.size() != geom.size()) throw StructuralError("radon: range space has wrong size");
  const auto m = mask_pattern(geom, spec);
  return from_transpose(
      image_space(grid), range,
      [grid, geom, m](std::span<const double> x, std::span<double> y) {
        radon_apply(grid, geom, x, y);
        for (std::size_t k = 0; k < m.size(); ++k) {
          if (!m[k]) y[k] = 0.0;
        }
      },
      [grid, geom, m](std::span<const double> y, std::span<double> x) {
        Vector masked(y.begin(), y.end());
        for (std::size_t k = 0; k < m.size(); ++k) {
          if (!m[k]) masked[k] = 0.0;
        }
        radon_transpose(grid, geom, masked, x);
      },
      "MX");
}

}  // namespace ffpat
