#ifndef FFPAT_WAVE_STEPPER_HPP
#define FFPAT_WAVE_STEPPER_HPP

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "ffpat/wave/wave_config.hpp"

namespace ffpat {

/// Initial (or reversed-time final) data (u, u_t).
struct InitialPair {
  Field2D f1;
  Field2D f2;
};

/// Pressure at two consecutive time levels.
struct WaveState {
  Field2D u;
  Field2D u_prev;
  double t = 0.0;
};

struct WaveSolution {
  Field2D u;   // u(., T)
  Field2D ut;  // centered-difference u_t(., T)
  /// Discrete energy at half steps 1/2, 3/2, ..., N - 1/2 when requested.
  std::vector<double> energy;
};

struct SolveOptions {
  bool record_energy = false;
  int snapshot_stride = 0;
  std::function<void(int step, const Field2D& u)> on_snapshot;
};

/// Pseudospectral k-space stepper on a periodic box.
///
/// Leapfrog in time with a centered damping term,
///   c^-2 (u+ - 2u + u-)/dt^2 + a (u+ - u-)/(2 dt) = L u,
/// solved pointwise for u+. L is the spectral Laplacian with the k-space
/// correction -|k|^2 -> -(2/(c_ref dt))^2 sin^2(c_ref |k| dt / 2),
/// c_ref = c_max, which is exact in time for c = c_ref and keeps the scheme
/// stable. The grid is zero-padded into a box whose side is a 2-3-5 smooth
/// even number for the FFT.
class WaveStepper {
 public:
  explicit WaveStepper(WaveConfig cfg);
  ~WaveStepper();
  WaveStepper(const WaveStepper&) = delete;
  WaveStepper& operator=(const WaveStepper&) = delete;

  const WaveConfig& config() const noexcept { return cfg_; }
  const Grid& grid() const noexcept { return cfg_.medium.grid; }
  int box_size() const noexcept { return box_; }

  /// Runs from u(0) = f1, u_t(0) = f2 to final_time.
  WaveSolution solve(const Field2D& f1, const Field2D& f2, const SolveOptions& options = {}) const;

  /// One time step of the scheme, advancing `state` in place.
  void step(WaveState& state) const;

  /// Starting state (u^1, u^0) from initial data.
  WaveState start(const Field2D& f1, const Field2D& f2) const;

  /// k-space corrected Laplacian of a grid field.
  Field2D laplacian(const Field2D& u) const;

 private:
  struct Plans;

  void apply_symbol(std::span<const double> box_in, std::span<double> box_out) const;
  void to_box(const Field2D& f, std::span<double> box) const;
  Field2D from_box(std::span<const double> box) const;

  WaveConfig cfg_;
  int n_ = 0;
  int box_ = 0;
  std::unique_ptr<Plans> plans_;
  std::vector<double> symbol_;      // scaled k-space Laplacian on the half spectrum
  std::vector<double> c2dt2_;       // c^2 dt^2
  std::vector<double> inv_plus_;    // 1 / (1 + b), b = a c^2 dt / 2
  std::vector<double> minus_;       // 1 - b
  std::vector<double> inv_c2_;      // c^-2
  std::vector<double> c2a_;         // c^2 a
};

/// Smallest even 2-3-5 smooth integer >= n.
int fft_friendly_size(int n);

}  // namespace ffpat

#endif  // FFPAT_WAVE_STEPPER_HPP
