#ifndef FFPAT_CORE_RANDOM_HPP
#define FFPAT_CORE_RANDOM_HPP

#include <boost/random/normal_distribution.hpp>
#include <cstdint>
#include <random>
#include <span>

namespace ffpat {

/// Seeded standard-normal source. The engine and distribution are both
/// fully specified, so streams are reproducible across platforms.
class NormalSource {
 public:
  explicit NormalSource(std::uint64_t seed) : engine_(seed) {}

  double operator()() { return dist_(engine_); }

  void fill(std::span<double> out) {
    for (double& v : out) v = dist_(engine_);
  }

 private:
  std::mt19937_64 engine_;
  boost::random::normal_distribution<double> dist_{0.0, 1.0};
};

}  // namespace ffpat

#endif  // FFPAT_CORE_RANDOM_HPP
