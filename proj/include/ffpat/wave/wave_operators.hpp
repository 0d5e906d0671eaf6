#ifndef FFPAT_WAVE_WAVE_OPERATORS_HPP
#define FFPAT_WAVE_WAVE_OPERATORS_HPP

#include <memory>

#include "ffpat/core/linear_operator.hpp"
#include "ffpat/wave/stepper.hpp"

namespace ffpat {

/// A wave configuration together with the object grid the source lives on.
/// Holds the stepper and the medium sampled on both grids.
class WaveModel {
 public:
  WaveModel(WaveConfig cfg, const Grid& object_grid);

  const WaveConfig& config() const noexcept { return stepper_->config(); }
  const WaveStepper& stepper() const noexcept { return *stepper_; }
  const Grid& object_grid() const noexcept { return object_grid_; }
  const Grid& sim_grid() const noexcept { return stepper_->grid(); }

  /// Sound speed restricted to the object grid.
  const Field2D& object_speed() const noexcept { return object_c_; }

  /// L2(c^-2) on the object grid, cell measure h^2.
  const VectorSpace& object_space() const noexcept { return object_space_; }
  /// L2(c^-2) on the simulation grid, cell measure h^2.
  const VectorSpace& sim_space() const noexcept { return sim_space_; }
  /// Unweighted L2 on the simulation grid, cell measure h^2.
  const VectorSpace& sim_uniform_space() const noexcept { return sim_uniform_space_; }

 private:
  std::shared_ptr<const WaveStepper> stepper_;
  Grid object_grid_;
  Field2D object_c_;
  VectorSpace object_space_;
  VectorSpace sim_space_;
  VectorSpace sim_uniform_space_;
};

/// Full solve from initial data given on the simulation grid.
WaveSolution solve_forward(const WaveModel& model, const InitialPair& init,
                           const SolveOptions& options = {});

/// W f = u(., T) on the simulation grid for the source f (object grid):
/// f is masked to Ω, embedded, and started as (f, -c^2 a f).
Field2D forward_W(const WaveModel& model, const Field2D& f, const SolveOptions& options = {});

/// L2(c^-2) adjoint of W: the reversed equation from q(T) = g,
/// q_t(T) = c^2 a g, returning χ_Ω q(., 0) on the object grid.
Field2D adjoint_W(const WaveModel& model, const Field2D& g);

/// W as a LinearOperator object_space -> sim_space.
OperatorPtr wave_operator(std::shared_ptr<const WaveModel> model);

/// Reweighting identity sim_space -> sim_uniform_space (adjoint multiplies by c^2).
OperatorPtr sim_reweight_operator(const WaveModel& model);

}  // namespace ffpat

#endif  // FFPAT_WAVE_WAVE_OPERATORS_HPP
