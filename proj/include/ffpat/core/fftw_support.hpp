#ifndef FFPAT_CORE_FFTW_SUPPORT_HPP
#define FFPAT_CORE_FFTW_SUPPORT_HPP

#include <fftw3.h>

#include <cstddef>
#include <mutex>
#include <new>

namespace ffpat::fftw {

/// FFTW planning is not thread-safe; execution with new arrays is.
inline std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

/// SIMD-aligned buffers, required for new-array plan execution.
struct RealBuffer {
  explicit RealBuffer(std::size_t n) : data(fftw_alloc_real(n)), size(n) {
    if (!data) throw std::bad_alloc();
  }
  ~RealBuffer() { fftw_free(data); }
  RealBuffer(const RealBuffer&) = delete;
  RealBuffer& operator=(const RealBuffer&) = delete;

  double* data;
  std::size_t size;
};

struct ComplexBuffer {
  explicit ComplexBuffer(std::size_t n) : data(fftw_alloc_complex(n)), size(n) {
    if (!data) throw std::bad_alloc();
  }
  ~ComplexBuffer() { fftw_free(data); }
  ComplexBuffer(const ComplexBuffer&) = delete;
  ComplexBuffer& operator=(const ComplexBuffer&) = delete;

  fftw_complex* data;
  std::size_t size;
};

/// Owns a pair of r2c/c2r plans.
struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  PlanPair() = default;
  PlanPair(const PlanPair&) = delete;
  PlanPair& operator=(const PlanPair&) = delete;
  ~PlanPair() {
    std::lock_guard lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }
};

}  // namespace ffpat::fftw

#endif  // FFPAT_CORE_FFTW_SUPPORT_HPP
