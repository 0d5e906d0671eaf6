#ifndef FFPAT_CORE_VERIFICATION_HPP
#define FFPAT_CORE_VERIFICATION_HPP

#include <cstdint>
#include <vector>

#include "ffpat/core/linear_operator.hpp"

namespace ffpat {

struct DotTestReport {
  double max_discrepancy = 0.0;
  std::vector<double> discrepancies;  // one per trial
};

/// Adjoint consistency |<Au, v> - <u, A*v>| / (|Au| |v| + eps) with u, v
/// standard normal from `seed`; reports the maximum over trials.
DotTestReport dot_test(const LinearOperator& op, int trials, std::uint64_t seed);

/// Largest singular value of `op` by power iteration on A*A.
double power_iter_norm(const LinearOperator& op, int iters, std::uint64_t seed);

/// Guard added to the dot-test denominator so that 0/0 stays defined.
inline constexpr double kDotTestGuard = 1e-300;

}  // namespace ffpat

#endif  // FFPAT_CORE_VERIFICATION_HPP
