#ifndef FFPAT_CORE_VECTOR_SPACE_HPP
#define FFPAT_CORE_VECTOR_SPACE_HPP

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace ffpat {

using Vector = std::vector<double>;

/// A symmetric positive semi-definite map G used as a non-diagonal metric,
/// giving the inner product <u, v> = measure * sum (G u)_i v_i.
class Metric {
 public:
  virtual ~Metric() = default;
  virtual void apply(std::span<const double> in, std::span<double> out) const = 0;
};

/// Shape plus inner product of a discrete function space.
///
/// The inner product is measure * sum_i w_i u_i v_i for a diagonal weight
/// field w (default 1), or measure * sum_i (G u)_i v_i for a metric G.
/// Product spaces sum the inner products of their blocks.
class VectorSpace {
 public:
  VectorSpace() = default;
  explicit VectorSpace(std::vector<std::size_t> shape, double measure = 1.0);

  static VectorSpace weighted(std::vector<std::size_t> shape, double measure, Vector weights);
  static VectorSpace with_metric(std::vector<std::size_t> shape, double measure,
                                 std::shared_ptr<const Metric> metric);
  static VectorSpace product(const VectorSpace& first, const VectorSpace& second);

  const std::vector<std::size_t>& shape() const noexcept { return shape_; }
  std::size_t size() const noexcept { return size_; }
  double measure() const noexcept { return measure_; }
  const Vector* weights() const noexcept { return weights_.get(); }
  const Metric* metric() const noexcept { return metric_.get(); }
  const std::vector<VectorSpace>& blocks() const noexcept { return blocks_; }
  bool is_product() const noexcept { return !blocks_.empty(); }

  double inner(std::span<const double> u, std::span<const double> v) const;
  double norm(std::span<const double> u) const;

  /// Same shape and same inner product (weights compared by value, metrics by identity).
  bool compatible(const VectorSpace& other) const;

  /// Throws StructuralError when `u` does not have size() entries.
  void check(std::span<const double> u, const char* what) const;

 private:
  std::vector<std::size_t> shape_;
  std::size_t size_ = 0;
  double measure_ = 1.0;
  std::shared_ptr<const Vector> weights_;
  std::shared_ptr<const Metric> metric_;
  std::vector<VectorSpace> blocks_;
};

}  // namespace ffpat

#endif  // FFPAT_CORE_VECTOR_SPACE_HPP
