#include "ffpat/core/verification.hpp"

#include <cmath>

#include "ffpat/core/errors.hpp"
#include "ffpat/core/random.hpp"

namespace ffpat {

DotTestReport dot_test(const LinearOperator& op, int trials, std::uint64_t seed) {
  if (trials < 1) throw StructuralError("dot_test: trials must be >= 1");
  NormalSource normal(seed);
  DotTestReport report;
  Vector u(op.domain().size());
  Vector v(op.range().size());
  Vector au(op.range().size());
  Vector atv(op.domain().size());
  for (int t = 0; t < trials; ++t) {
    normal.fill(u);
    normal.fill(v);
    op.apply(u, au);
    op.apply_adjoint(v, atv);
    const double lhs = op.range().inner(au, v);
    const double rhs = op.domain().inner(u, atv);
    const double scale = op.range().norm(au) * op.range().norm(v) + kDotTestGuard;
    const double d = std::abs(lhs - rhs) / scale;
    report.discrepancies.push_back(d);
    report.max_discrepancy = std::max(report.max_discrepancy, d);
  }
  return report;
}

double power_iter_norm(const LinearOperator& op, int iters, std::uint64_t seed) {
  if (iters < 1) throw StructuralError("power_iter_norm: iters must be >= 1");
  NormalSource normal(seed);
  Vector x(op.domain().size());
  normal.fill(x);
  Vector ax(op.range().size());
  double estimate = 0.0;
  for (int k = 0; k < iters; ++k) {
    const double nx = op.domain().norm(x);
    if (nx == 0.0) return 0.0;
    for (double& v : x) v /= nx;
    op.apply(x, ax);
    estimate = op.range().norm(ax);
    if (estimate == 0.0) return 0.0;
    op.apply_adjoint(ax, x);
  }
  return estimate;
}

}  // namespace ffpat
