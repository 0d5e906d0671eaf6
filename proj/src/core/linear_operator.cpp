#include "ffpat/core/linear_operator.hpp"

#include <algorithm>

#include "ffpat/core/errors.hpp"

namespace ffpat {

LinearOperator::LinearOperator(VectorSpace domain, VectorSpace range, std::string name)
    : domain_(std::move(domain)), range_(std::move(range)), name_(std::move(name)) {}

void LinearOperator::apply(std::span<const double> x, std::span<double> y) const {
  domain_.check(x, (name_ + ".apply input").c_str());
  range_.check(y, (name_ + ".apply output").c_str());
  do_apply(x, y);
}

void LinearOperator::apply_adjoint(std::span<const double> y, std::span<double> x) const {
  range_.check(y, (name_ + ".apply_adjoint input").c_str());
  domain_.check(x, (name_ + ".apply_adjoint output").c_str());
  do_apply_adjoint(y, x);
}

Vector LinearOperator::apply(std::span<const double> x) const {
  Vector y(range_.size());
  apply(x, y);
  return y;
}

Vector LinearOperator::apply_adjoint(std::span<const double> y) const {
  Vector x(domain_.size());
  apply_adjoint(y, x);
  return x;
}

namespace {

class FunctionOperator final : public LinearOperator {
 public:
  FunctionOperator(VectorSpace domain, VectorSpace range, ApplyFn apply, ApplyFn adjoint,
                   std::string name)
      : LinearOperator(std::move(domain), std::move(range), std::move(name)),
        apply_(std::move(apply)),
        adjoint_(std::move(adjoint)) {}

 protected:
  void do_apply(std::span<const double> x, std::span<double> y) const override { apply_(x, y); }
  void do_apply_adjoint(std::span<const double> y, std::span<double> x) const override {
    adjoint_(y, x);
  }

 private:
  ApplyFn apply_;
  ApplyFn adjoint_;
};

// Applies the range-side Riesz map (measure, weights or metric) in place of
// a copy of `y`, so that transpose(result) / domain weights is the adjoint.
void range_riesz(const VectorSpace& space, std::span<const double> y, std::span<double> out) {
  if (space.is_product()) {
    std::size_t offset = 0;
    for (const auto& block : space.blocks()) {
      range_riesz(block, y.subspan(offset, block.size()), out.subspan(offset, block.size()));
      offset += block.size();
    }
    return;
  }
  if (space.metric()) {
    space.metric()->apply(y, out);
  } else if (space.weights()) {
    const Vector& w = *space.weights();
    for (std::size_t i = 0; i < y.size(); ++i) out[i] = w[i] * y[i];
  } else {
    std::copy(y.begin(), y.end(), out.begin());
  }
  for (double& v : out) v *= space.measure();
}

void domain_inverse_riesz(const VectorSpace& space, std::span<double> x) {
  if (space.is_product()) {
    std::size_t offset = 0;
    for (const auto& block : space.blocks()) {
      domain_inverse_riesz(block, x.subspan(offset, block.size()));
      offset += block.size();
    }
    return;
  }
  if (space.metric()) {
    throw StructuralError("from_transpose: domain with a non-diagonal metric is not supported");
  }
  const double inv_measure = 1.0 / space.measure();
  if (space.weights()) {
    const Vector& w = *space.weights();
    for (std::size_t i = 0; i < x.size(); ++i) x[i] *= inv_measure / w[i];
  } else {
    for (double& v : x) v *= inv_measure;
  }
}

void check_no_domain_metric(const VectorSpace& space) {
  if (space.is_product()) {
    for (const auto& block : space.blocks()) check_no_domain_metric(block);
  } else if (space.metric()) {
    throw StructuralError("from_transpose: domain with a non-diagonal metric is not supported");
  }
}

}  // namespace

OperatorPtr make_operator(VectorSpace domain, VectorSpace range, ApplyFn apply, ApplyFn adjoint,
                          std::string name) {
  return std::make_shared<FunctionOperator>(std::move(domain), std::move(range), std::move(apply),
                                            std::move(adjoint), std::move(name));
}

OperatorPtr from_transpose(VectorSpace domain, VectorSpace range, ApplyFn apply, ApplyFn transpose,
                           std::string name) {
  check_no_domain_metric(domain);
  auto adjoint = [domain, range, transpose](std::span<const double> y, std::span<double> x) {
    Vector riesz(y.size());
    range_riesz(range, y, riesz);
    transpose(riesz, x);
    domain_inverse_riesz(domain, x);
  };
  return make_operator(std::move(domain), std::move(range), std::move(apply), std::move(adjoint),
                       std::move(name));
}

OperatorPtr identity(const VectorSpace& space) {
  auto copy = [](std::span<const double> in, std::span<double> out) {
    std::copy(in.begin(), in.end(), out.begin());
  };
  return make_operator(space, space, copy, copy, "identity");
}

OperatorPtr identity(const VectorSpace& from, const VectorSpace& to) {
  if (from.size() != to.size()) {
    throw StructuralError("identity: spaces differ in size");
  }
  if (from.compatible(to)) return identity(from);
  auto copy = [](std::span<const double> in, std::span<double> out) {
    std::copy(in.begin(), in.end(), out.begin());
  };
  return from_transpose(from, to, copy, copy, "reweight");
}

OperatorPtr diagonal(const VectorSpace& space, Vector diag) {
  if (diag.size() != space.size()) throw StructuralError("diagonal: size mismatch");
  auto d = std::make_shared<const Vector>(std::move(diag));
  auto mul = [d](std::span<const double> in, std::span<double> out) {
    for (std::size_t i = 0; i < in.size(); ++i) out[i] = (*d)[i] * in[i];
  };
  if (space.metric() || space.is_product()) {
    return from_transpose(space, space, mul, mul, "diagonal");
  }
  // Diagonal weights commute with a diagonal multiplier.
  return make_operator(space, space, mul, mul, "diagonal");
}

OperatorPtr dense_matrix(std::size_t rows, std::size_t cols, Vector entries) {
  if (entries.size() != rows * cols) throw StructuralError("dense_matrix: entry count mismatch");
  auto m = std::make_shared<const Vector>(std::move(entries));
  auto mv = [m, rows, cols](std::span<const double> x, std::span<double> y) {
    for (std::size_t r = 0; r < rows; ++r) {
      double s = 0.0;
      for (std::size_t c = 0; c < cols; ++c) s += (*m)[r * cols + c] * x[c];
      y[r] = s;
    }
  };
  auto mtv = [m, rows, cols](std::span<const double> y, std::span<double> x) {
    std::fill(x.begin(), x.end(), 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) x[c] += (*m)[r * cols + c] * y[r];
    }
  };
  return make_operator(VectorSpace({cols}), VectorSpace({rows}), mv, mtv, "matrix");
}

OperatorPtr compose(OperatorPtr outer, OperatorPtr inner) {
  if (!outer || !inner) throw StructuralError("compose: null operator");
  if (!inner->range().compatible(outer->domain())) {
    throw StructuralError("compose: range of '" + inner->name() +
                          "' does not match domain of '" + outer->name() + "'");
  }
  const std::size_t mid = inner->range().size();
  auto apply = [outer, inner, mid](std::span<const double> x, std::span<double> y) {
    Vector tmp(mid);
    inner->apply(x, tmp);
    outer->apply(tmp, y);
  };
  auto adjoint = [outer, inner, mid](std::span<const double> y, std::span<double> x) {
    Vector tmp(mid);
    outer->apply_adjoint(y, tmp);
    inner->apply_adjoint(tmp, x);
  };
  return make_operator(inner->domain(), outer->range(), apply, adjoint,
                       outer->name() + "∘" + inner->name());
}

OperatorPtr stack(OperatorPtr first, OperatorPtr second) {
  if (!first || !second) throw StructuralError("stack: null operator");
  if (!first->domain().compatible(second->domain())) {
    throw StructuralError("stack: operators have different domains");
  }
  const std::size_t n1 = first->range().size();
  const std::size_t n2 = second->range().size();
  auto apply = [first, second, n1, n2](std::span<const double> x, std::span<double> y) {
    first->apply(x, y.subspan(0, n1));
    second->apply(x, y.subspan(n1, n2));
  };
  auto adjoint = [first, second, n1, n2](std::span<const double> y, std::span<double> x) {
    first->apply_adjoint(y.subspan(0, n1), x);
    Vector tmp(x.size());
    second->apply_adjoint(y.subspan(n1, n2), tmp);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += tmp[i];
  };
  return make_operator(first->domain(), VectorSpace::product(first->range(), second->range()),
                       apply, adjoint, "(" + first->name() + ";" + second->name() + ")");
}

}  // namespace ffpat
