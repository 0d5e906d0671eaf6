#ifndef FFPAT_EXPERIMENT_EXPERIMENT_HPP
#define FFPAT_EXPERIMENT_EXPERIMENT_HPP

#include <functional>
#include <map>
#include <memory>
#include <string>

#include "ffpat/core/linear_operator.hpp"
#include "ffpat/experiment/config.hpp"
#include "ffpat/recon/recon_run.hpp"
#include "ffpat/wave/wave_operators.hpp"

namespace ffpat {

/// Everything a run needs besides the solver choice: model, data, operators.
struct ExperimentSetup {
  ExperimentConfig cfg;
  std::shared_ptr<const WaveModel> model;
  SinogramGeom geom;
  MaskSpec mask;
  Field2D truth;        // source f on the object grid
  Field2D final_field;  // W f on the simulation grid
  Sinogram clean;
  Sinogram noisy;
  double noise_sigma = 0.0;
  OperatorPtr A;  // M X J W : L2(c^-2) -> Λ-weighted sinogram space
  OperatorPtr D;  // gradient on L2(c^-2)
};

using LogFn = std::function<void(const std::string&)>;

/// Builds phantoms, simulates y = M X W f, adds noise and assembles A and D.
ExperimentSetup prepare_experiment(const ExperimentConfig& cfg, const LogFn& log = {});

/// Runs one named solver on a prepared setup. Norm estimates are cached in
/// `norms` (keys "A" and "AD") so several solvers can share them.
ReconRun run_solver(const ExperimentSetup& setup, const std::string& solver,
                    std::map<std::string, double>& norms, const LogFn& log = {});

struct ExperimentResult {
  ExperimentSetup setup;
  std::map<std::string, ReconRun> runs;
};

/// prepare_experiment, every selected solver, then all artifacts in cfg.out:
/// truth, clean and noisy sinograms, per-solver CSVs, best fields with PGM
/// previews, and summary.txt (config keys plus result.* lines).
ExperimentResult run_experiment(const ExperimentConfig& cfg, const LogFn& log = {});

}  // namespace ffpat

#endif  // FFPAT_EXPERIMENT_EXPERIMENT_HPP
