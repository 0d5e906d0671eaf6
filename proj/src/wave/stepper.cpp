#include "ffpat/wave/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ffpat/core/errors.hpp"
#include "ffpat/core/fftw_support.hpp"

namespace ffpat {

namespace {

using fftw::ComplexBuffer;
using fftw::RealBuffer;

bool is_smooth(int n) {
  for (int p : {2, 3, 5}) {
    while (n % p == 0) n /= p;
  }
  return n == 1;
}

}  // namespace

int fft_friendly_size(int n) {
  int m = std::max(n, 2);
  while (m % 2 != 0 || !is_smooth(m)) ++m;
  return m;
}

struct WaveStepper::Plans : fftw::PlanPair {
  std::size_t real_size = 0;
  std::size_t complex_size = 0;
};

namespace {

struct Workspace {
  Workspace(std::size_t real_size, std::size_t complex_size)
      : real(real_size), spectrum(complex_size) {}
  RealBuffer real;
  ComplexBuffer spectrum;
};

}  // namespace

WaveStepper::WaveStepper(WaveConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
  n_ = cfg_.medium.grid.n;
  box_ = fft_friendly_size(n_);
  const int half = box_ / 2 + 1;
  const std::size_t real_size = static_cast<std::size_t>(box_) * box_;
  const std::size_t complex_size = static_cast<std::size_t>(box_) * half;

  plans_ = std::make_unique<Plans>();
  plans_->real_size = real_size;
  plans_->complex_size = complex_size;
  {
    RealBuffer r(real_size);
    ComplexBuffer c(complex_size);
    std::lock_guard lock(fftw::planner_mutex());
    // FFTW_ESTIMATE keeps the algorithm choice, and thus every bit of the
    // output, independent of timing measurements.
    plans_->forward = fftw_plan_dft_r2c_2d(box_, box_, r.data, c.data, FFTW_ESTIMATE);
    plans_->backward = fftw_plan_dft_c2r_2d(box_, box_, c.data, r.data, FFTW_ESTIMATE);
  }
  if (!plans_->forward || !plans_->backward) throw NumericalError("wave: FFT planning failed");

  const double h = cfg_.medium.grid.spacing();
  const double dt = cfg_.dt();
  const double c_ref = cfg_.medium.c_max();
  const double period = box_ * h;
  const double norm = 1.0 / (static_cast<double>(box_) * box_);
  symbol_.resize(complex_size);
  for (int ky = 0; ky < box_; ++ky) {
    const int my = ky <= box_ / 2 ? ky : ky - box_;
    const double wy = 2.0 * std::numbers::pi * my / period;
    for (int kx = 0; kx < half; ++kx) {
      const double wx = 2.0 * std::numbers::pi * kx / period;
      const double k = std::hypot(wx, wy);
      const double s = std::sin(0.5 * c_ref * k * dt);
      symbol_[static_cast<std::size_t>(ky) * half + kx] =
          -4.0 * s * s / (c_ref * c_ref * dt * dt) * norm;
    }
  }

  // Padding takes the medium's corner values (the exterior background).
  const double c_bg = cfg_.medium.c(0, 0);
  const double a_bg = cfg_.medium.a(0, 0);
  c2dt2_.assign(real_size, c_bg * c_bg * dt * dt);
  inv_plus_.assign(real_size, 1.0 / (1.0 + 0.5 * a_bg * c_bg * c_bg * dt));
  minus_.assign(real_size, 1.0 - 0.5 * a_bg * c_bg * c_bg * dt);
  inv_c2_.assign(real_size, 1.0 / (c_bg * c_bg));
  c2a_.assign(real_size, c_bg * c_bg * a_bg);
  for (int iy = 0; iy < n_; ++iy) {
    for (int ix = 0; ix < n_; ++ix) {
      const std::size_t b = static_cast<std::size_t>(iy) * box_ + ix;
      const double c = cfg_.medium.c(ix, iy);
      const double a = cfg_.medium.a(ix, iy);
      const double damp = 0.5 * a * c * c * dt;
      c2dt2_[b] = c * c * dt * dt;
      inv_plus_[b] = 1.0 / (1.0 + damp);
      minus_[b] = 1.0 - damp;
      inv_c2_[b] = 1.0 / (c * c);
      c2a_[b] = c * c * a;
    }
  }
}

WaveStepper::~WaveStepper() = default;

void WaveStepper::to_box(const Field2D& f, std::span<double> box) const {
  if (!(f.grid() == cfg_.medium.grid)) {
    throw StructuralError("wave: field on " + f.grid().describe() + ", expected simulation grid " +
                          cfg_.medium.grid.describe());
  }
  std::fill(box.begin(), box.end(), 0.0);
  for (int iy = 0; iy < n_; ++iy) {
    std::copy_n(f.values().begin() + static_cast<std::ptrdiff_t>(iy) * n_, n_,
                box.begin() + static_cast<std::ptrdiff_t>(iy) * box_);
  }
}

Field2D WaveStepper::from_box(std::span<const double> box) const {
  Field2D f(cfg_.medium.grid);
  for (int iy = 0; iy < n_; ++iy) {
    std::copy_n(box.begin() + static_cast<std::ptrdiff_t>(iy) * box_, n_,
                f.values().begin() + static_cast<std::ptrdiff_t>(iy) * n_);
  }
  return f;
}

void WaveStepper::apply_symbol(std::span<const double> box_in, std::span<double> box_out) const {
  Workspace ws(plans_->real_size, plans_->complex_size);
  std::copy(box_in.begin(), box_in.end(), ws.real.data);
  fftw_execute_dft_r2c(plans_->forward, ws.real.data, ws.spectrum.data);
  for (std::size_t i = 0; i < plans_->complex_size; ++i) {
    ws.spectrum.data[i][0] *= symbol_[i];
    ws.spectrum.data[i][1] *= symbol_[i];
  }
  fftw_execute_dft_c2r(plans_->backward, ws.spectrum.data, ws.real.data);
  std::copy(ws.real.data, ws.real.data + plans_->real_size, box_out.begin());
}

Field2D WaveStepper::laplacian(const Field2D& u) const {
  std::vector<double> box(plans_->real_size);
  to_box(u, box);
  apply_symbol(box, box);
  return from_box(box);
}

WaveState WaveStepper::start(const Field2D& f1, const Field2D& f2) const {
  const Field2D lap = laplacian(f1);
  const double dt = cfg_.dt();
  WaveState state{Field2D(f1.grid()), f1, dt};
  for (int iy = 0; iy < n_; ++iy) {
    for (int ix = 0; ix < n_; ++ix) {
      const std::size_t b = static_cast<std::size_t>(iy) * box_ + ix;
      const double c2 = c2dt2_[b] / (dt * dt);
      state.u(ix, iy) = f1(ix, iy) + dt * f2(ix, iy) +
                        0.5 * dt * dt * c2 * (lap(ix, iy) - cfg_.medium.a(ix, iy) * f2(ix, iy));
    }
  }
  return state;
}

void WaveStepper::step(WaveState& state) const {
  std::vector<double> u(plans_->real_size), prev(plans_->real_size), lap(plans_->real_size);
  to_box(state.u, u);
  to_box(state.u_prev, prev);
  apply_symbol(u, lap);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double next = (2.0 * u[i] - minus_[i] * prev[i] + c2dt2_[i] * lap[i]) * inv_plus_[i];
    prev[i] = u[i];
    u[i] = next;
  }
  state.u_prev = from_box(prev);
  state.u = from_box(u);
  state.t += cfg_.dt();
}

WaveSolution WaveStepper::solve(const Field2D& f1, const Field2D& f2,
                                const SolveOptions& options) const {
  if (!(f2.grid() == cfg_.medium.grid)) throw StructuralError("wave: f2 not on simulation grid");
  const int steps = cfg_.steps;
  const double dt = cfg_.dt();
  const double cell = cfg_.medium.grid.spacing() * cfg_.medium.grid.spacing();
  const std::size_t size = plans_->real_size;

  WaveSolution out;
  const WaveState s0 = start(f1, f2);
  std::vector<double> prev(size), u(size), next(size), lap(size);
  to_box(s0.u_prev, prev);
  to_box(s0.u, u);

  Workspace ws(plans_->real_size, plans_->complex_size);
  auto laplace = [&](const std::vector<double>& in, std::vector<double>& result) {
    std::copy(in.begin(), in.end(), ws.real.data);
    fftw_execute_dft_r2c(plans_->forward, ws.real.data, ws.spectrum.data);
    for (std::size_t i = 0; i < plans_->complex_size; ++i) {
      ws.spectrum.data[i][0] *= symbol_[i];
      ws.spectrum.data[i][1] *= symbol_[i];
    }
    fftw_execute_dft_c2r(plans_->backward, ws.spectrum.data, ws.real.data);
    std::copy(ws.real.data, ws.real.data + size, result.begin());
  };

  if (options.on_snapshot && options.snapshot_stride > 0) options.on_snapshot(0, f1);

  // u holds u^n, prev holds u^(n-1); the loop produces u^(n+1) up to n = steps.
  for (int n = 1; n <= steps; ++n) {
    laplace(u, lap);
    if (options.record_energy) {
      // E^(n-1/2) = |(u^n - u^(n-1))/dt|^2_{c^-2} - <L u^n, u^(n-1)>
      double kinetic = 0.0;
      double potential = 0.0;
      for (std::size_t i = 0; i < size; ++i) {
        const double du = (u[i] - prev[i]) / dt;
        kinetic += inv_c2_[i] * du * du;
        potential -= lap[i] * prev[i];
      }
      out.energy.push_back((kinetic + potential) * cell);
    }
    double peak = 0.0;
    for (std::size_t i = 0; i < size; ++i) {
      next[i] = (2.0 * u[i] - minus_[i] * prev[i] + c2dt2_[i] * lap[i]) * inv_plus_[i];
      peak = std::max(peak, std::abs(next[i]));
    }
    if (!std::isfinite(peak)) throw DivergenceError("wave: non-finite pressure", n + 1);
    std::swap(prev, u);
    std::swap(u, next);
    if (options.on_snapshot && options.snapshot_stride > 0 && (n + 1) % options.snapshot_stride == 0 &&
        n + 1 <= steps) {
      options.on_snapshot(n + 1, from_box(u));
    }
  }
  // prev = u^N, u = u^(N+1); next holds u^(N-1) after the swaps.
  out.u = from_box(prev);
  out.ut = Field2D(cfg_.medium.grid);
  for (int iy = 0; iy < n_; ++iy) {
    for (int ix = 0; ix < n_; ++ix) {
      const std::size_t b = static_cast<std::size_t>(iy) * box_ + ix;
      out.ut(ix, iy) = (u[b] - next[b]) / (2.0 * dt);
    }
  }
  return out;
}

}  // namespace ffpat
