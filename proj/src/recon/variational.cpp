#include <algorithm>
#include <cmath>
#include <sstream>

#include "ffpat/core/conjugate_gradient.hpp"
#include "ffpat/core/errors.hpp"
#include "ffpat/core/verification.hpp"
#include "ffpat/recon/solvers.hpp"

namespace ffpat {

Vector prox_quadratic(const LinearOperator& D, std::span<const double> v, double t) {
  D.domain().check(v, "prox input");
  Vector z(v.begin(), v.end());
  if (t == 0.0) return z;
  if (t < 0.0) throw ConfigError("prox: weight must be non-negative");
  const VectorSpace& X = D.domain();
  Vector dz(D.range().size());
  Vector dtdz(X.size());
  auto apply = [&](std::span<const double> in, std::span<double> out) {
    D.apply(in, dz);
    D.apply_adjoint(dz, dtdz);
    for (std::size_t i = 0; i < in.size(); ++i) out[i] = in[i] + t * dtdz[i];
  };
  auto inner = [&](std::span<const double> a, std::span<const double> b) { return X.inner(a, b); };
  const int max_iters = std::max<int>(1000, static_cast<int>(10 * std::sqrt(double(X.size()))));
  const CgResult res = conjugate_gradient(apply, inner, v, std::span<double>(z), 1e-10, max_iters);
  if (!res.converged) {
    std::ostringstream msg;
    msg << "prox: inner CG stopped at relative residual " << res.relative_residual << " after "
        << res.iterations << " iterations";
    throw NumericalError(msg.str());
  }
  return z;
}

ReconRun fbs_quadratic(const LinearOperator& A, const LinearOperator& D,
                       std::span<const double> y, std::span<const double> x0, double lambda,
                       double s, const RunOptions& options, double op_norm) {
  A.range().check(y, "data");
  A.domain().check(x0, "initial iterate");
  if (!D.domain().compatible(A.domain())) throw StructuralError("fbs: D and A act on different spaces");
  RunRecorder rec("fbs", options);
  if (!(s > 0.0)) throw ConfigError("fbs: step size must be positive");
  if (lambda < 0.0) throw ConfigError("fbs: lambda must be non-negative");
  if (op_norm <= 0.0) op_norm = power_iter_norm(A, 30, options.seed);
  if (s * op_norm * op_norm > 1.0 + 1e-12) {
    std::ostringstream msg;
    msg << "step " << s << " exceeds 1/|A|^2 = " << 1.0 / (op_norm * op_norm);
    rec.warn(msg.str());
  }
  const VectorSpace& Y = A.range();
  Vector x(x0.begin(), x0.end());
  Vector r = A.apply(x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= y[i];
  Vector g(x.size());
  for (int k = 1; k <= options.stop.max_iters; ++k) {
    A.apply_adjoint(r, g);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= s * g[i];
    if (lambda > 0.0) x = prox_quadratic(D, x, s * lambda);
    A.apply(x, r);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= y[i];
    if (rec.record(k, Y.norm(r), x)) return rec.finish(x, "");
  }
  return rec.finish(x, "max_iters");
}

namespace {

// Projects each dual vector onto the ball of radius lambda. For a product
// range the vector at index i collects entry i of every block.
double project_dual(const VectorSpace& space, std::span<double> q, double lambda) {
  double sup = 0.0;
  if (space.is_product()) {
    const auto& blocks = space.blocks();
    const std::size_t m = blocks.front().size();
    for (const auto& b : blocks) {
      if (b.size() != m) throw StructuralError("cp: dual blocks must have equal size");
    }
    for (std::size_t i = 0; i < m; ++i) {
      double mag2 = 0.0;
      for (std::size_t b = 0; b < blocks.size(); ++b) mag2 += q[b * m + i] * q[b * m + i];
      const double scale = lambda / std::max(lambda, std::sqrt(mag2));
      double out2 = 0.0;
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        q[b * m + i] *= scale;
        out2 += q[b * m + i] * q[b * m + i];
      }
      sup = std::max(sup, std::sqrt(out2));
    }
  } else {
    for (double& v : q) {
      v *= lambda / std::max(lambda, std::abs(v));
      sup = std::max(sup, std::abs(v));
    }
  }
  return sup;
}

}  // namespace

ReconRun chambolle_pock_tv(const LinearOperator& A, const LinearOperator& D,
                           std::span<const double> y, std::span<const double> x0, double lambda,
                           const RunOptions& options, double stacked_norm) {
  A.range().check(y, "data");
  A.domain().check(x0, "initial iterate");
  if (!D.domain().compatible(A.domain())) throw StructuralError("cp: D and A act on different spaces");
  if (!(lambda > 0.0)) throw ConfigError("cp: lambda must be positive");
  RunRecorder rec("cp", options);
  if (stacked_norm <= 0.0) {
    const std::size_t na = A.range().size();
    auto stacked = make_operator(
        A.domain(), VectorSpace::product(A.range(), D.range()),
        [&](std::span<const double> x, std::span<double> out) {
          A.apply(x, out.first(na));
          D.apply(x, out.subspan(na));
        },
        [&](std::span<const double> in, std::span<double> x) {
          Vector tmp(x.size());
          A.apply_adjoint(in.first(na), x);
          D.apply_adjoint(in.subspan(na), tmp);
          for (std::size_t i = 0; i < x.size(); ++i) x[i] += tmp[i];
        },
        "(A;D)");
    stacked_norm = power_iter_norm(*stacked, 50, options.seed);
  }
  const double tau = 1.0 / stacked_norm;
  const double sigma = 1.0 / stacked_norm;
  const double theta = 1.0;

  const VectorSpace& Y = A.range();
  const std::size_t nx = A.domain().size();
  Vector x(x0.begin(), x0.end());
  Vector u = x;
  Vector ax = A.apply(x);
  Vector au = ax;
  Vector p(Y.size(), 0.0);
  Vector q(D.range().size(), 0.0);
  Vector du(q.size());
  Vector atp(nx), dtq(nx), x_next(nx), ax_next(Y.size());

  for (int k = 1; k <= options.stop.max_iters; ++k) {
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = (p[i] + sigma * (au[i] - y[i])) / (1.0 + sigma);
    D.apply(u, du);
    for (std::size_t i = 0; i < q.size(); ++i) q[i] += sigma * du[i];
    rec.run().dual_sup.push_back(project_dual(D.range(), q, lambda));
    // D.apply_adjoint is the true adjoint, so the TV term enters with a minus.
    A.apply_adjoint(p, atp);
    D.apply_adjoint(q, dtq);
    for (std::size_t i = 0; i < nx; ++i) x_next[i] = x[i] - tau * atp[i] - tau * dtq[i];
    A.apply(x_next, ax_next);
    for (std::size_t i = 0; i < nx; ++i) u[i] = x_next[i] + theta * (x_next[i] - x[i]);
    for (std::size_t i = 0; i < au.size(); ++i) au[i] = ax_next[i] + theta * (ax_next[i] - ax[i]);
    std::swap(x, x_next);
    std::swap(ax, ax_next);
    Vector r(ax.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = ax[i] - y[i];
    if (rec.record(k, Y.norm(r), x)) return rec.finish(x, "");
  }
  return rec.finish(x, "max_iters");
}

}  // namespace ffpat
