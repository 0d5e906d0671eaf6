#include <cmath>
#include <sstream>

#include "ffpat/core/errors.hpp"
#include "ffpat/core/verification.hpp"
#include "ffpat/recon/solvers.hpp"

namespace ffpat {

namespace {

void check_inputs(const LinearOperator& A, std::span<const double> y, std::span<const double> x0) {
  A.range().check(y, "data");
  A.domain().check(x0, "initial iterate");
}

// r = A x - y
Vector residual(const LinearOperator& A, std::span<const double> x, std::span<const double> y) {
  Vector r = A.apply(x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= y[i];
  return r;
}

}  // namespace

ReconRun cgne(const LinearOperator& A, std::span<const double> y, std::span<const double> x0,
              const RunOptions& options) {
  check_inputs(A, y, x0);
  RunRecorder rec("cgne", options);
  const VectorSpace& X = A.domain();
  const VectorSpace& Y = A.range();

  Vector x(x0.begin(), x0.end());
  Vector p = A.apply(x);
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = y[i] - p[i];
  Vector s = A.apply_adjoint(p);
  Vector d = s;
  double gamma = X.inner(s, s);
  Vector q(Y.size());

  for (int k = 1; k <= options.stop.max_iters; ++k) {
    if (gamma == 0.0) return rec.finish(x, "exact");
    A.apply(d, q);
    const double qq = Y.inner(q, q);
    if (!(qq > 0.0)) {
      if (std::isnan(qq)) throw DivergenceError("cgne: non-finite search direction", k);
      throw NumericalError("cgne: breakdown, |A d| = 0 with nonzero gradient");
    }
    const double alpha = gamma / qq;
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += alpha * d[i];
    for (std::size_t i = 0; i < p.size(); ++i) p[i] -= alpha * q[i];
    if (rec.record(k, Y.norm(p), x)) return rec.finish(x, "");
    A.apply_adjoint(p, s);
    const double gamma_next = X.inner(s, s);
    const double beta = gamma_next / gamma;
    gamma = gamma_next;
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = s[i] + beta * d[i];
  }
  return rec.finish(x, "max_iters");
}

ReconRun landweber(const LinearOperator& A, std::span<const double> y,
                   std::span<const double> x0, double gamma, const RunOptions& options,
                   double op_norm) {
  check_inputs(A, y, x0);
  RunRecorder rec("landweber", options);
  if (!(gamma > 0.0)) throw ConfigError("landweber: step size must be positive");
  if (op_norm <= 0.0) op_norm = power_iter_norm(A, 30, options.seed);
  if (gamma * op_norm * op_norm >= 2.0) {
    std::ostringstream msg;
    msg << "step " << gamma << " violates gamma < 2/|A|^2 = " << 2.0 / (op_norm * op_norm);
    rec.warn(msg.str());
  }
  const VectorSpace& Y = A.range();
  Vector x(x0.begin(), x0.end());
  Vector r = residual(A, x, y);
  const double r0 = Y.norm(r);
  Vector g(x.size());
  for (int k = 1; k <= options.stop.max_iters; ++k) {
    A.apply_adjoint(r, g);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= gamma * g[i];
    r = residual(A, x, y);
    const double rn = Y.norm(r);
    if (rec.record(k, rn, x)) return rec.finish(x, "");
    if (rn > 10.0 * r0 && r0 > 0.0) {
      throw DivergenceError("landweber: residual grew beyond ten times its initial value", k);
    }
  }
  return rec.finish(x, "max_iters");
}

ReconRun steepest_descent(const LinearOperator& A, std::span<const double> y,
                          std::span<const double> x0, const RunOptions& options) {
  check_inputs(A, y, x0);
  RunRecorder rec("sd", options);
  const VectorSpace& X = A.domain();
  const VectorSpace& Y = A.range();
  Vector x(x0.begin(), x0.end());
  Vector r = residual(A, x, y);
  Vector g(x.size());
  Vector q(r.size());
  for (int k = 1; k <= options.stop.max_iters; ++k) {
    A.apply_adjoint(r, g);
    const double gg = X.inner(g, g);
    if (gg == 0.0) return rec.finish(x, "exact");
    A.apply(g, q);
    const double qq = Y.inner(q, q);
    if (!(qq > 0.0)) {
      if (std::isnan(qq)) throw DivergenceError("sd: non-finite gradient image", k);
      throw NumericalError("sd: breakdown, |A A* r| = 0 with nonzero gradient");
    }
    const double step = gg / qq;
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= step * g[i];
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= step * q[i];
    if (rec.record(k, Y.norm(r), x)) return rec.finish(x, "");
  }
  return rec.finish(x, "max_iters");
}

}  // namespace ffpat
