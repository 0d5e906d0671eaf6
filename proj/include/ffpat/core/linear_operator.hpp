#ifndef FFPAT_CORE_LINEAR_OPERATOR_HPP
#define FFPAT_CORE_LINEAR_OPERATOR_HPP

#include <functional>
#include <memory>
#include <span>
#include <string>

#include "ffpat/core/vector_space.hpp"

namespace ffpat {

/// Matrix-free linear map between two vector spaces.
///
/// apply_adjoint is the adjoint with respect to the inner products declared
/// by domain() and range(). Implementations must be safe to call
/// concurrently; they hold no mutable state.
class LinearOperator {
 public:
  virtual ~LinearOperator() = default;

  const VectorSpace& domain() const noexcept { return domain_; }
  const VectorSpace& range() const noexcept { return range_; }
  const std::string& name() const noexcept { return name_; }

  void apply(std::span<const double> x, std::span<double> y) const;
  void apply_adjoint(std::span<const double> y, std::span<double> x) const;

  Vector apply(std::span<const double> x) const;
  Vector apply_adjoint(std::span<const double> y) const;

 protected:
  LinearOperator(VectorSpace domain, VectorSpace range, std::string name);

  virtual void do_apply(std::span<const double> x, std::span<double> y) const = 0;
  virtual void do_apply_adjoint(std::span<const double> y, std::span<double> x) const = 0;

 private:
  VectorSpace domain_;
  VectorSpace range_;
  std::string name_;
};

using OperatorPtr = std::shared_ptr<const LinearOperator>;

using ApplyFn = std::function<void(std::span<const double>, std::span<double>)>;

/// Operator from a pair of callables; `adjoint` must already be the adjoint
/// under the declared spaces.
OperatorPtr make_operator(VectorSpace domain, VectorSpace range, ApplyFn apply, ApplyFn adjoint,
                          std::string name = "operator");

/// Operator from a map and its plain Euclidean transpose. The weighted
/// adjoint is formed as W_dom^{-1} T^t (mu_range/mu_dom) G_range, so the
/// domain must not carry a non-diagonal metric.
OperatorPtr from_transpose(VectorSpace domain, VectorSpace range, ApplyFn apply, ApplyFn transpose,
                           std::string name = "operator");

/// Identity map between two spaces of equal shape. When the inner products
/// differ the adjoint carries the reweighting.
OperatorPtr identity(const VectorSpace& space);
OperatorPtr identity(const VectorSpace& from, const VectorSpace& to);

/// Pointwise multiplication by a fixed field.
OperatorPtr diagonal(const VectorSpace& space, Vector diag);

/// Dense row-major matrix with Euclidean spaces.
OperatorPtr dense_matrix(std::size_t rows, std::size_t cols, Vector entries);

/// outer ∘ inner. Throws StructuralError when inner.range and outer.domain
/// are not compatible.
OperatorPtr compose(OperatorPtr outer, OperatorPtr inner);

/// x ↦ (first x, second x) into the product of the two ranges.
OperatorPtr stack(OperatorPtr first, OperatorPtr second);

}  // namespace ffpat

#endif  // FFPAT_CORE_LINEAR_OPERATOR_HPP
