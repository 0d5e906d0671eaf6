#ifndef FFPAT_RECON_SOLVERS_HPP
#define FFPAT_RECON_SOLVERS_HPP

#include <span>

#include "ffpat/core/linear_operator.hpp"
#include "ffpat/recon/recon_run.hpp"

namespace ffpat {

/// Conjugate gradients on the normal equations, norms taken in the spaces
/// declared by A. Throws NumericalError on breakdown (A d = 0 while A* p != 0).
ReconRun cgne(const LinearOperator& A, std::span<const double> y, std::span<const double> x0,
              const RunOptions& options);

/// x <- x - gamma A*(Ax - y). op_norm <= 0 means estimate |A| by power
/// iteration. Warns when gamma >= 2/|A|^2 and throws DivergenceError once
/// the residual exceeds ten times its initial value.
ReconRun landweber(const LinearOperator& A, std::span<const double> y,
                   std::span<const double> x0, double gamma, const RunOptions& options,
                   double op_norm = 0.0);

/// Landweber with the exact line-search step |A*r|^2 / |A A* r|^2.
ReconRun steepest_descent(const LinearOperator& A, std::span<const double> y,
                          std::span<const double> x0, const RunOptions& options);

/// Solves (I + t D*D) z = v by conjugate gradients in D's domain inner
/// product, relative residual 1e-10. Throws NumericalError if CG stalls.
Vector prox_quadratic(const LinearOperator& D, std::span<const double> v, double t);

/// Forward-backward splitting for |Ax - y|^2/2 + lambda |Dx|^2/2 with step s.
ReconRun fbs_quadratic(const LinearOperator& A, const LinearOperator& D,
                       std::span<const double> y, std::span<const double> x0, double lambda,
                       double s, const RunOptions& options, double op_norm = 0.0);

/// Primal-dual iteration for |Ax - y|^2/2 + lambda |Dx|_1 with tau = sigma = 1/L,
/// theta = 1. When D's range is a product space the dual magnitude is the
/// Euclidean norm across its blocks at each index (isotropic TV).
/// stacked_norm <= 0 means L = |(A; D)| by 50 power iterations.
ReconRun chambolle_pock_tv(const LinearOperator& A, const LinearOperator& D,
                           std::span<const double> y, std::span<const double> x0, double lambda,
                           const RunOptions& options, double stacked_norm = 0.0);

}  // namespace ffpat

#endif  // FFPAT_RECON_SOLVERS_HPP
