#ifndef FFPAT_RECON_RECON_RUN_HPP
#define FFPAT_RECON_RECON_RUN_HPP

#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ffpat/core/vector_space.hpp"

namespace ffpat {

struct StopRule {
  int max_iters = 100;
  /// Stop once |Ax - y| <= tau * noise_norm (tau > 1).
  std::optional<double> discrepancy_tau;
  double noise_norm = 0.0;
  /// Stop once the residual changes by less than eps relative.
  std::optional<double> stagnation_eps;

  void validate() const;
};

/// Trajectory of one solver run. Index k of the per-iteration vectors
/// belongs to the iterate after k + 1 iterations.
struct ReconRun {
  std::string solver;
  std::vector<double> residuals;
  std::vector<double> rel_errors;  // empty without ground truth
  std::vector<double> wall_ms;     // cumulative
  std::vector<double> dual_sup;    // CP only: max pointwise |q|
  std::vector<std::pair<int, Vector>> snapshots;
  std::vector<std::string> warnings;
  Vector final_iterate;
  Vector best_iterate;   // argmin of rel_errors, or the final iterate
  int best_iteration = 0;  // 1-based; 0 before any iteration
  std::string stop_reason;

  int iterations() const noexcept { return static_cast<int>(residuals.size()); }
  double best_error() const;
};

struct RunOptions {
  StopRule stop;
  /// Ground truth in the solver's domain layout; empty disables error tracking.
  std::span<const double> truth;
  /// Store every k-th iterate (0 = none).
  int snapshot_stride = 0;
  /// Receives validation warnings; defaults to stderr.
  std::function<void(const std::string&)> warn;
  /// Called after every iteration with (k, residual, rel_error or NaN).
  std::function<void(int, double, double)> progress;
  /// Seed for power-iteration norm estimates.
  std::uint64_t seed = 1;
};

/// Shared iteration bookkeeping: timing, errors, best iterate, stop rules.
class RunRecorder {
 public:
  RunRecorder(std::string solver, const RunOptions& options);

  void warn(const std::string& message);

  /// Logs iterate k (1-based). Throws DivergenceError on a non-finite
  /// residual. Returns true when a stop rule fired.
  bool record(int k, double residual, std::span<const double> x);

  ReconRun finish(std::span<const double> x, std::string reason);
  ReconRun& run() noexcept { return run_; }

 private:
  ReconRun run_;
  const RunOptions& options_;
  double start_ms_;
  double best_ = 0.0;
};

/// iter,residual,rel_error with full precision; deterministic for a fixed run.
void write_run_csv(const std::filesystem::path& path, const ReconRun& run);
/// iter,wall_ms kept separate so the trajectory CSV is reproducible bit for bit.
void write_timing_csv(const std::filesystem::path& path, const ReconRun& run);

}  // namespace ffpat

#endif  // FFPAT_RECON_RECON_RUN_HPP
