#include "ffpat/experiment/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "ffpat/core/errors.hpp"
#include "ffpat/core/verification.hpp"
#include "ffpat/experiment/noise.hpp"
#include "ffpat/fields/io.hpp"
#include "ffpat/fields/phantom.hpp"
#include "ffpat/radon/filter.hpp"
#include "ffpat/radon/io.hpp"
#include "ffpat/radon/mask.hpp"
#include "ffpat/radon/transform.hpp"
#include "ffpat/recon/gradient.hpp"
#include "ffpat/recon/neumann.hpp"
#include "ffpat/recon/solvers.hpp"

namespace ffpat {

namespace fs = std::filesystem;

namespace {

void say(const LogFn& log, const std::string& msg) {
  if (log) log(msg);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Field2D zero_interior(Field2D f) {
  const Grid& g = f.grid();
  for (int iy = 0; iy < g.n; ++iy) {
    for (int ix = 0; ix < g.n; ++ix) {
      const double x = g.coord(ix);
      const double y = g.coord(iy);
      if (x * x + y * y < 1.0) f(ix, iy) = 0.0;
    }
  }
  return f;
}

std::vector<std::uint8_t> exterior_nodes(const Grid& g) {
  std::vector<std::uint8_t> m(g.size());
  for (int iy = 0; iy < g.n; ++iy) {
    for (int ix = 0; ix < g.n; ++ix) {
      const double x = g.coord(ix);
      const double y = g.coord(iy);
      m[g.index(ix, iy)] = x * x + y * y >= 1.0;
    }
  }
  return m;
}

double norm_of(std::map<std::string, double>& norms, const std::string& key,
               const std::function<double()>& compute) {
  auto it = norms.find(key);
  if (it != norms.end()) return it->second;
  const double v = compute();
  norms[key] = v;
  return v;
}

}  // namespace

ExperimentSetup prepare_experiment(const ExperimentConfig& cfg, const LogFn& log) {
  cfg.validate();
  ExperimentSetup s;
  s.cfg = cfg;
  const Grid obj = cfg.object_grid();
  const Grid sim = cfg.sim_grid();
  const DefaultPhantoms ph = default_phantoms();
  s.truth = build_phantom(ph.source, obj);

  WaveConfig wc{default_medium(sim), cfg.final_time, cfg.steps};
  for (const auto& w : wc.warnings()) say(log, "warning: " + w);
  s.model = std::make_shared<const WaveModel>(wc, obj);

  say(log, "simulating data on " + sim.describe());
  SolveOptions opts;
  if (cfg.wave_snapshots > 0) {
    fs::create_directories(fs::path(cfg.out) / "wave");
    opts.snapshot_stride = cfg.wave_snapshots;
    opts.on_snapshot = [&cfg](int step, const Field2D& u) {
      char name[32];
      std::snprintf(name, sizeof name, "u_step%05d", step);
      write_field(fs::path(cfg.out) / "wave" / name, u, "pressure");
    };
  }
  s.final_field = forward_W(*s.model, s.truth, opts);

  s.geom = SinogramGeom::for_grid(sim, cfg.n_theta);
  s.mask = cfg.mask();
  s.clean = apply_mask(radon_forward(s.final_field, s.geom), s.mask);
  s.noisy = s.clean;
  s.noise_sigma = add_noise_inplace(s.noisy.values, s.noisy.mask, cfg.noise, cfg.seed);

  auto W = wave_operator(s.model);
  auto J = sim_reweight_operator(*s.model);
  auto MX = masked_radon_operator(sim, s.geom, s.mask, lambda_space(s.geom));
  s.A = compose(MX, compose(J, W));
  s.D = gradient_operator(obj, s.model->object_space());
  return s;
}

ReconRun run_solver(const ExperimentSetup& s, const std::string& solver,
                    std::map<std::string, double>& norms, const LogFn& log) {
  const ExperimentConfig& cfg = s.cfg;
  RunOptions opts;
  opts.truth = s.truth.span();
  opts.snapshot_stride = cfg.snapshots;
  opts.seed = cfg.seed;
  opts.warn = [&log, solver](const std::string& m) { say(log, "warning: " + solver + ": " + m); };
  opts.progress = [&log, solver](int k, double res, double err) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s iter %d residual %.6e rel_error %.6f", solver.c_str(), k,
                  res, err);
    say(log, buf);
  };
  const Vector x0(s.truth.values().size(), 0.0);
  const std::span<const double> y = s.noisy.values;
  auto a_norm = [&] {
    return norm_of(norms, "A", [&] {
      say(log, "estimating |A|");
      return power_iter_norm(*s.A, cfg.norm_iters, cfg.seed);
    });
  };

  if (solver == "cgne") {
    opts.stop.max_iters = cfg.cgne_iters;
    return cgne(*s.A, y, x0, opts);
  }
  if (solver == "landweber") {
    opts.stop.max_iters = cfg.landweber_iters;
    const double n = a_norm();
    return landweber(*s.A, y, x0, cfg.landweber_step / (n * n), opts, n);
  }
  if (solver == "sd") {
    opts.stop.max_iters = cfg.sd_iters;
    return steepest_descent(*s.A, y, x0, opts);
  }
  if (solver == "fbs") {
    opts.stop.max_iters = cfg.fbs_iters;
    const double n = a_norm();
    return fbs_quadratic(*s.A, *s.D, y, x0, cfg.fbs_lambda, cfg.fbs_step / (n * n), opts, n);
  }
  if (solver == "cp") {
    opts.stop.max_iters = cfg.cp_iters;
    const double L = norm_of(norms, "AD", [&] {
      say(log, "estimating |(A; D)|");
      const std::size_t na = s.A->range().size();
      auto stacked = make_operator(
          s.A->domain(), VectorSpace::product(s.A->range(), s.D->range()),
          [&](std::span<const double> x, std::span<double> out) {
            s.A->apply(x, out.first(na));
            s.D->apply(x, out.subspan(na));
          },
          [&](std::span<const double> in, std::span<double> x) {
            Vector tmp(x.size());
            s.A->apply_adjoint(in.first(na), x);
            s.D->apply_adjoint(in.subspan(na), tmp);
            for (std::size_t i = 0; i < x.size(); ++i) x[i] += tmp[i];
          },
          "(A;D)");
      return power_iter_norm(*stacked, cfg.cp_norm_iters, cfg.seed);
    });
    return chambolle_pock_tv(*s.A, *s.D, y, x0, cfg.cp_lambda, opts, L);
  }
  if (solver == "neumann") {
    opts.stop.max_iters = cfg.neumann_iters;
    Field2D g(s.model->sim_grid());
    if (cfg.neumann_data == "fbp") {
      g = zero_interior(fbp(s.noisy, s.model->sim_grid()));
    } else {
      g = zero_interior(s.final_field);
      const auto ext = exterior_nodes(g.grid());
      add_noise_inplace(g.span(), ext, cfg.noise, cfg.seed);
    }
    return neumann_series_recon(*s.model, g, cfg.neumann_lambda, opts);
  }
  throw ConfigError("unknown solver '" + solver + "'");
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, const LogFn& log) {
  cfg.validate();
  const fs::path out = cfg.out;
  fs::create_directories(out);
  ExperimentResult result{prepare_experiment(cfg, log), {}};
  const ExperimentSetup& s = result.setup;

  write_field(out / "truth", s.truth, "source");
  write_pgm(out / "truth.pgm", s.truth);
  write_sinogram(out / "sinogram_clean", s.clean, s.mask);
  write_sinogram(out / "sinogram_noisy", s.noisy, s.mask);

  std::map<std::string, double> norms;
  for (const auto& name : cfg.solvers) {
    say(log, "running " + name);
    ReconRun run = run_solver(s, name, norms, log);
    write_run_csv(out / (name + ".csv"), run);
    write_timing_csv(out / (name + "_timing.csv"), run);
    const Field2D best(s.truth.grid(), run.best_iterate);
    write_field(out / (name + "_best"), best, name + " best iterate");
    write_pgm(out / (name + "_best.pgm"), best);
    for (const auto& [k, x] : run.snapshots) {
      char tag[32];
      std::snprintf(tag, sizeof tag, "_iter%04d", k);
      write_field(out / (name + tag), Field2D(s.truth.grid(), x), name + " iterate");
    }
    result.runs.emplace(name, std::move(run));
  }

  std::ofstream summary(out / "summary.txt");
  if (!summary) throw ConfigError("cannot write " + (out / "summary.txt").string());
  for (const auto& [key, value] : config_entries(cfg)) summary << key << '=' << value << '\n';
  summary << "result.noise_reference=mean_abs_active_samples\n";
  summary << "result.noise_sigma=" << fmt(s.noise_sigma) << '\n';
  for (const auto& [key, value] : norms) summary << "result.norm_" << key << '=' << fmt(value) << '\n';
  for (const auto& name : cfg.solvers) {
    const ReconRun& run = result.runs.at(name);
    const std::string p = "result." + name + ".";
    summary << p << "best_rel_error=" << fmt(run.best_error()) << '\n';
    summary << p << "best_iteration=" << run.best_iteration << '\n';
    summary << p << "iterations=" << run.iterations() << '\n';
    summary << p << "final_rel_error=" << fmt(run.rel_errors.empty() ? NAN : run.rel_errors.back())
            << '\n';
    summary << p << "stop_reason=" << run.stop_reason << '\n';
    char ms[32];
    std::snprintf(ms, sizeof ms, "%.1f", run.wall_ms.empty() ? 0.0 : run.wall_ms.back());
    summary << p << "wall_ms=" << ms << '\n';
  }
  return result;
}

}  // namespace ffpat
