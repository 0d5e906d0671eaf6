#ifndef FFPAT_RADON_FILTER_HPP
#define FFPAT_RADON_FILTER_HPP

#include <memory>

#include "ffpat/core/linear_operator.hpp"
#include "ffpat/fields/grid.hpp"
#include "ffpat/radon/sinogram.hpp"

namespace ffpat {

/// Per-angle Fourier multiplier |ω|/(4π) along s, ω = 2πk/(n_s ds).
/// Zero frequency maps to zero. No zero padding and no apodization.
Sinogram lambda_filter(const Sinogram& sin);

/// The same filter as a reusable object holding one FFT plan pair.
class LambdaFilter final : public Metric {
 public:
  explicit LambdaFilter(const SinogramGeom& geom);
  ~LambdaFilter() override;

  void apply(std::span<const double> in, std::span<double> out) const override;
  const SinogramGeom& geom() const noexcept { return geom_; }

 private:
  struct Plans;
  SinogramGeom geom_;
  std::unique_ptr<Plans> plans_;
  Vector multiplier_;
};

/// Sinogram space with the Λ-weighted inner product <u, v> = dθ ds Σ (Λu) v.
VectorSpace lambda_space(const SinogramGeom& geom);

/// Λ as a self-adjoint operator on the plain sinogram space.
OperatorPtr lambda_operator(const SinogramGeom& geom);

/// Filtered backprojection 2 (dθ ds / h^2) X^t Λ, an approximate inverse of
/// radon_forward on full-angle data.
Field2D fbp(const Sinogram& sin, const Grid& grid);

}  // namespace ffpat

#endif  // FFPAT_RADON_FILTER_HPP
