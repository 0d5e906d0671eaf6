#include "ffpat/core/vector_space.hpp"

#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "ffpat/core/errors.hpp"

namespace ffpat {

namespace {

std::size_t shape_size(const std::vector<std::size_t>& shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
}

}  // namespace

VectorSpace::VectorSpace(std::vector<std::size_t> shape, double measure)
    : shape_(std::move(shape)), size_(shape_size(shape_)), measure_(measure) {
  if (!(measure_ > 0.0) || !std::isfinite(measure_)) {
    throw StructuralError("vector space: cell measure must be positive and finite");
  }
}

VectorSpace VectorSpace::weighted(std::vector<std::size_t> shape, double measure, Vector weights) {
  VectorSpace space(std::move(shape), measure);
  if (weights.size() != space.size_) {
    throw StructuralError("vector space: weight field has " + std::to_string(weights.size()) +
                          " entries, expected " + std::to_string(space.size_));
  }
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw StructuralError("vector space: weights must be strictly positive and finite");
    }
  }
  space.weights_ = std::make_shared<const Vector>(std::move(weights));
  return space;
}

VectorSpace VectorSpace::with_metric(std::vector<std::size_t> shape, double measure,
                                     std::shared_ptr<const Metric> metric) {
  VectorSpace space(std::move(shape), measure);
  if (!metric) throw StructuralError("vector space: null metric");
  space.metric_ = std::move(metric);
  return space;
}

VectorSpace VectorSpace::product(const VectorSpace& first, const VectorSpace& second) {
  VectorSpace space({first.size() + second.size()}, 1.0);
  space.blocks_ = {first, second};
  return space;
}

double VectorSpace::inner(std::span<const double> u, std::span<const double> v) const {
  check(u, "inner(u)");
  check(v, "inner(v)");
  if (is_product()) {
    double sum = 0.0;
    std::size_t offset = 0;
    for (const auto& block : blocks_) {
      sum += block.inner(u.subspan(offset, block.size()), v.subspan(offset, block.size()));
      offset += block.size();
    }
    return sum;
  }
  double sum = 0.0;
  if (metric_) {
    Vector gu(size_);
    metric_->apply(u, gu);
    for (std::size_t i = 0; i < size_; ++i) sum += gu[i] * v[i];
  } else if (weights_) {
    const Vector& w = *weights_;
    for (std::size_t i = 0; i < size_; ++i) sum += w[i] * u[i] * v[i];
  } else {
    for (std::size_t i = 0; i < size_; ++i) sum += u[i] * v[i];
  }
  return measure_ * sum;
}

double VectorSpace::norm(std::span<const double> u) const {
  return std::sqrt(std::max(inner(u, u), 0.0));
}

bool VectorSpace::compatible(const VectorSpace& other) const {
  if (shape_ != other.shape_ || measure_ != other.measure_) return false;
  if (blocks_.size() != other.blocks_.size()) return false;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (!blocks_[b].compatible(other.blocks_[b])) return false;
  }
  if (metric_.get() != other.metric_.get()) return false;
  if (static_cast<bool>(weights_) != static_cast<bool>(other.weights_)) return false;
  if (weights_ && weights_ != other.weights_ && *weights_ != *other.weights_) return false;
  return true;
}

void VectorSpace::check(std::span<const double> u, const char* what) const {
  if (u.size() != size_) {
    throw StructuralError(std::string(what) + ": got " + std::to_string(u.size()) +
                          " entries, space has " + std::to_string(size_));
  }
}

}  // namespace ffpat
