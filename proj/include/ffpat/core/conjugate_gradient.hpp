#ifndef FFPAT_CORE_CONJUGATE_GRADIENT_HPP
#define FFPAT_CORE_CONJUGATE_GRADIENT_HPP

#include <cmath>
#include <span>

#include "ffpat/core/vector_space.hpp"

namespace ffpat {

struct CgResult {
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

/// Conjugate gradient for a self-adjoint positive definite `apply` in the
/// inner product `inner`. `x` holds the initial guess on entry.
template <class ApplyOp, class Inner>
CgResult conjugate_gradient(ApplyOp&& apply, Inner&& inner, std::span<const double> b,
                            std::span<double> x, double tol, int max_iters) {
  const std::size_t n = b.size();
  Vector r(n), p(n), ap(n);
  apply(std::span<const double>(x.data(), n), std::span<double>(ap));
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - ap[i];
  const double bnorm = std::sqrt(std::max(inner(b, b), 0.0));
  CgResult result;
  if (bnorm == 0.0) {
    for (double& v : x) v = 0.0;
    result.converged = true;
    return result;
  }
  p = r;
  double rr = inner(std::span<const double>(r), std::span<const double>(r));
  result.relative_residual = std::sqrt(rr) / bnorm;
  if (result.relative_residual <= tol) {
    result.converged = true;
    return result;
  }
  for (int k = 1; k <= max_iters; ++k) {
    apply(std::span<const double>(p), std::span<double>(ap));
    const double pap = inner(std::span<const double>(p), std::span<const double>(ap));
    if (!(pap > 0.0)) break;
    const double alpha = rr / pap;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    const double rr_next = inner(std::span<const double>(r), std::span<const double>(r));
    result.iterations = k;
    result.relative_residual = std::sqrt(std::max(rr_next, 0.0)) / bnorm;
    if (result.relative_residual <= tol) {
      result.converged = true;
      break;
    }
    const double beta = rr_next / rr;
    rr = rr_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
  }
  return result;
}

}  // namespace ffpat

#endif  // FFPAT_CORE_CONJUGATE_GRADIENT_HPP
