#include "ffpat/recon/recon_run.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>

#include "ffpat/core/errors.hpp"
#include "ffpat/fields/grid.hpp"

namespace ffpat {

namespace {

double now_ms() {
  using namespace std::chrono;
  return duration<double, std::milli>(steady_clock::now().time_since_epoch()).count();
}

std::string exact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void StopRule::validate() const {
  if (max_iters < 1) throw ConfigError("stop rule: max_iters must be >= 1");
  if (discrepancy_tau && !(*discrepancy_tau > 1.0)) {
    throw ConfigError("stop rule: discrepancy tau must exceed 1");
  }
  if (stagnation_eps && !(*stagnation_eps > 0.0)) {
    throw ConfigError("stop rule: stagnation eps must be positive");
  }
}

double ReconRun::best_error() const {
  if (rel_errors.empty()) return std::numeric_limits<double>::quiet_NaN();
  return rel_errors.at(static_cast<std::size_t>(best_iteration - 1));
}

RunRecorder::RunRecorder(std::string solver, const RunOptions& options)
    : options_(options), start_ms_(now_ms()) {
  options.stop.validate();
  run_.solver = std::move(solver);
}

void RunRecorder::warn(const std::string& message) {
  run_.warnings.push_back(message);
  if (options_.warn) {
    options_.warn(message);
  } else {
    std::cerr << "warning: " << run_.solver << ": " << message << '\n';
  }
}

bool RunRecorder::record(int k, double residual, std::span<const double> x) {
  if (!std::isfinite(residual)) {
    throw DivergenceError(run_.solver + ": non-finite residual", k);
  }
  run_.residuals.push_back(residual);
  run_.wall_ms.push_back(now_ms() - start_ms_);
  double err = std::numeric_limits<double>::quiet_NaN();
  if (!options_.truth.empty()) {
    err = rel_l2_error(x, options_.truth);
    run_.rel_errors.push_back(err);
    if (run_.best_iteration == 0 || err < best_) {
      best_ = err;
      run_.best_iteration = k;
      run_.best_iterate.assign(x.begin(), x.end());
    }
  }
  if (options_.snapshot_stride > 0 && k % options_.snapshot_stride == 0) {
    run_.snapshots.emplace_back(k, Vector(x.begin(), x.end()));
  }
  if (options_.progress) options_.progress(k, residual, err);

  const StopRule& stop = options_.stop;
  if (stop.discrepancy_tau && residual <= *stop.discrepancy_tau * stop.noise_norm) {
    run_.stop_reason = "discrepancy";
    return true;
  }
  if (stop.stagnation_eps && run_.residuals.size() >= 2) {
    const double prev = run_.residuals[run_.residuals.size() - 2];
    if (std::abs(prev - residual) <= *stop.stagnation_eps * prev) {
      run_.stop_reason = "stagnation";
      return true;
    }
  }
  return false;
}

ReconRun RunRecorder::finish(std::span<const double> x, std::string reason) {
  if (run_.stop_reason.empty()) run_.stop_reason = std::move(reason);
  run_.final_iterate.assign(x.begin(), x.end());
  if (options_.truth.empty()) {
    run_.best_iterate = run_.final_iterate;
    run_.best_iteration = run_.iterations();
  }
  return std::move(run_);
}

void write_run_csv(const std::filesystem::path& path, const ReconRun& run) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
  out << "iter,residual,rel_error\n";
  for (int k = 0; k < run.iterations(); ++k) {
    out << k + 1 << ',' << exact(run.residuals[k]) << ','
        << (run.rel_errors.empty() ? std::string("nan") : exact(run.rel_errors[k])) << '\n';
  }
}

void write_timing_csv(const std::filesystem::path& path, const ReconRun& run) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
  out << "iter,wall_ms\n";
  for (int k = 0; k < run.iterations(); ++k) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", run.wall_ms[k]);
    out << k + 1 << ',' << buf << '\n';
  }
}

}  // namespace ffpat
