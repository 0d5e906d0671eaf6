#include <algorithm>
#include <numbers>

#include "ffpat/core/errors.hpp"
#include "ffpat/core/fftw_support.hpp"
#include "ffpat/radon/filter.hpp"
#include "ffpat/radon/transform.hpp"

namespace ffpat {

struct LambdaFilter::Plans : fftw::PlanPair {};

LambdaFilter::LambdaFilter(const SinogramGeom& geom) : geom_(geom) {
  geom_.validate();
  const int ns = geom_.n_s;
  const int half = ns / 2 + 1;
  plans_ = std::make_unique<Plans>();
  {
    fftw::RealBuffer r(geom_.size());
    fftw::ComplexBuffer c(static_cast<std::size_t>(geom_.n_theta) * half);
    std::lock_guard lock(fftw::planner_mutex());
    int len[] = {ns};
    plans_->forward = fftw_plan_many_dft_r2c(1, len, geom_.n_theta, r.data, nullptr, 1, ns, c.data,
                                             nullptr, 1, half, FFTW_ESTIMATE);
    plans_->backward = fftw_plan_many_dft_c2r(1, len, geom_.n_theta, c.data, nullptr, 1, half,
                                              r.data, nullptr, 1, ns, FFTW_ESTIMATE);
  }
  if (!plans_->forward || !plans_->backward) throw NumericalError("lambda filter: FFT planning failed");
  // |ω| / (4π) with ω = 2π k / (n_s ds), folded with the 1/n_s of the inverse DFT.
  multiplier_.resize(half);
  for (int k = 0; k < half; ++k) {
    const double omega = 2.0 * std::numbers::pi * k / (ns * geom_.ds);
    multiplier_[k] = omega / (4.0 * std::numbers::pi) / ns;
  }
  // For even lengths the Nyquist bin has no partner; keeping it real keeps
  // the filter symmetric. Lengths here are odd, so nothing to do.
}

LambdaFilter::~LambdaFilter() = default;

void LambdaFilter::apply(std::span<const double> in, std::span<double> out) const {
  if (in.size() != geom_.size() || out.size() != geom_.size()) {
    throw StructuralError("lambda filter: sinogram size mismatch");
  }
  const std::size_t half = multiplier_.size();
  fftw::RealBuffer r(geom_.size());
  fftw::ComplexBuffer c(static_cast<std::size_t>(geom_.n_theta) * half);
  std::copy(in.begin(), in.end(), r.data);
  fftw_execute_dft_r2c(plans_->forward, r.data, c.data);
  for (int i = 0; i < geom_.n_theta; ++i) {
    fftw_complex* row = c.data + static_cast<std::size_t>(i) * half;
    for (std::size_t k = 0; k < half; ++k) {
      row[k][0] *= multiplier_[k];
      row[k][1] *= multiplier_[k];
    }
  }
  fftw_execute_dft_c2r(plans_->backward, c.data, r.data);
  std::copy(r.data, r.data + geom_.size(), out.begin());
}

Sinogram lambda_filter(const Sinogram& sin) {
  Sinogram out = sin;
  LambdaFilter(sin.geom).apply(sin.values, out.values);
  return out;
}

VectorSpace lambda_space(const SinogramGeom& geom) {
  return VectorSpace::with_metric(
      {static_cast<std::size_t>(geom.n_theta), static_cast<std::size_t>(geom.n_s)},
      geom.angle_step() * geom.ds, std::make_shared<LambdaFilter>(geom));
}

OperatorPtr lambda_operator(const SinogramGeom& geom) {
  auto filter = std::make_shared<LambdaFilter>(geom);
  auto fn = [filter](std::span<const double> x, std::span<double> y) { filter->apply(x, y); };
  return make_operator(geom.space(), geom.space(), fn, fn, "Lambda");
}

Field2D fbp(const Sinogram& sin, const Grid& grid) {
  const Sinogram filtered = lambda_filter(sin);
  Field2D out = backproject(filtered, grid);
  const double h = grid.spacing();
  const double scale = 2.0 * sin.geom.angle_step() * sin.geom.ds / (h * h);
  for (double& v : out.values()) v *= scale;
  return out;
}

}  // namespace ffpat
