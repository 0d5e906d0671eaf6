#include "ffpat/recon/gradient.hpp"

#include "ffpat/core/errors.hpp"
#include "ffpat/radon/transform.hpp"

namespace ffpat {

void gradient_apply(const Grid& grid, std::span<const double> img, std::span<double> q) {
  const int n = grid.n;
  const std::size_t N = grid.size();
  if (img.size() != N || q.size() != 2 * N) throw StructuralError("gradient: size mismatch");
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      const std::size_t k = grid.index(ix, iy);
      q[k] = ix + 1 < n ? img[k + 1] - img[k] : 0.0;
      q[N + k] = iy + 1 < n ? img[k + n] - img[k] : 0.0;
    }
  }
}

void divergence_apply(const Grid& grid, std::span<const double> q, std::span<double> img) {
  const int n = grid.n;
  const std::size_t N = grid.size();
  if (img.size() != N || q.size() != 2 * N) throw StructuralError("divergence: size mismatch");
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      const std::size_t k = grid.index(ix, iy);
      double v = 0.0;
      if (ix + 1 < n) v += q[k];
      if (ix > 0) v -= q[k - 1];
      if (iy + 1 < n) v += q[N + k];
      if (iy > 0) v -= q[N + k - n];
      img[k] = v;
    }
  }
}

GradientPair gradient_D(const Field2D& img) {
  const Grid& g = img.grid();
  Vector q(2 * g.size());
  gradient_apply(g, img.span(), q);
  GradientPair out{Field2D(g), Field2D(g)};
  std::copy(q.begin(), q.begin() + g.size(), out.d1.values().begin());
  std::copy(q.begin() + g.size(), q.end(), out.d2.values().begin());
  return out;
}

Field2D divergence(const GradientPair& q) {
  const Grid& g = q.d1.grid();
  if (!(q.d2.grid() == g)) throw StructuralError("divergence: channels on different grids");
  Vector flat(2 * g.size());
  std::copy(q.d1.values().begin(), q.d1.values().end(), flat.begin());
  std::copy(q.d2.values().begin(), q.d2.values().end(), flat.begin() + g.size());
  Field2D out(g);
  divergence_apply(g, flat, out.span());
  return out;
}

OperatorPtr gradient_operator(const Grid& grid, const VectorSpace& domain) {
  if (domain.size() != grid.size()) throw StructuralError("gradient: domain has wrong size");
  const VectorSpace channel = image_space(grid);
  return from_transpose(
      domain, VectorSpace::product(channel, channel),
      [grid](std::span<const double> x, std::span<double> y) { gradient_apply(grid, x, y); },
      [grid](std::span<const double> y, std::span<double> x) {
        divergence_apply(grid, y, x);
        for (double& v : x) v = -v;
      },
      "D");
}

}  // namespace ffpat
