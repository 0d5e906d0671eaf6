#include "ffpat/experiment/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "ffpat/core/errors.hpp"
#include "ffpat/core/verification.hpp"
#include "ffpat/fields/phantom.hpp"
#include "ffpat/fields/transfer.hpp"
#include "ffpat/radon/filter.hpp"
#include "ffpat/radon/mask.hpp"
#include "ffpat/radon/transform.hpp"
#include "ffpat/recon/gradient.hpp"
#include "ffpat/wave/time_reversal.hpp"

namespace ffpat {

namespace {

constexpr int kTrials = 10;

struct Suite {
  std::vector<CheckResult> results;
  const std::function<void(const CheckResult&)>& sink;

  void add(std::string name, double value, double tol, std::string detail = "") {
    CheckResult r{std::move(name), value, tol, std::isfinite(value) && value <= tol,
                  std::move(detail)};
    if (sink) sink(r);
    results.push_back(std::move(r));
  }
};

void dot(Suite& s, const std::string& name, const LinearOperator& op, double tol) {
  s.add("dot_test " + name, dot_test(op, kTrials, 7).max_discrepancy, tol);
}

void adjoint_suite(Suite& s, const ExperimentConfig& cfg) {
  const Grid obj = cfg.object_grid();
  const Grid sim = cfg.sim_grid();
  const auto geom = SinogramGeom::for_grid(sim, cfg.n_theta);
  const MaskSpec mask = cfg.mask();
  dot(s, "X/X*", *radon_operator(sim, geom), 1e-10);
  dot(s, "Lambda", *lambda_operator(geom), 1e-10);
  dot(s, "M", *mask_operator(geom, mask, geom.space()), 1e-10);
  auto model = std::make_shared<const WaveModel>(
      WaveConfig{default_medium(sim), cfg.final_time, cfg.steps}, obj);
  dot(s, "D/-div", *gradient_operator(obj, model->object_space()), 1e-10);
  dot(s, "embed/restrict", *embed_operator(obj, sim), 1e-10);
  auto W = wave_operator(model);
  dot(s, "W/W* (c^-2 weighted)", *W, 2e-2);
  auto A = compose(masked_radon_operator(sim, geom, mask, lambda_space(geom)),
                   compose(sim_reweight_operator(*model), W));
  dot(s, "A/A* (Lambda weighted)", *A, 2e-2);
}

// Single Fourier mode on a box that needs no padding.
double mode_error(double damping) {
  const int n = 64;
  Grid g(n, 1.0);
  WaveConfig wc{constant_medium(g, 1.0, damping), 1.0, 200};
  wc.source_coupling = false;
  wc.require_free_space = false;
  WaveStepper stepper(wc);
  const double period = n * g.spacing();
  const double kx = 2.0 * std::numbers::pi * 3 / period;
  const double ky = 2.0 * std::numbers::pi * 2 / period;
  Field2D f1(g);
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) f1(ix, iy) = std::cos(kx * g.coord(ix) + ky * g.coord(iy));
  }
  const auto sol = stepper.solve(f1, Field2D(g));
  const double k2 = kx * kx + ky * ky;
  const double T = 1.0;
  double amp;
  if (damping == 0.0) {
    amp = std::cos(std::sqrt(k2) * T);
  } else {
    const double wd = std::sqrt(k2 - 0.25 * damping * damping);
    amp = std::exp(-0.5 * damping * T) *
          (std::cos(wd * T) + 0.5 * damping / wd * std::sin(wd * T));
  }
  Field2D expected = f1;
  for (double& v : expected.values()) v *= amp;
  return rel_l2_error(sol.u, expected);
}

void oracle_suite(Suite& s, const ExperimentConfig& cfg) {
  s.add("wave single mode, a = 0", mode_error(0.0), 1e-3);
  s.add("wave single mode, a = 0.5", mode_error(0.5), 1e-2);

  const Grid sim = cfg.sim_grid();
  const Grid obj = cfg.object_grid();
  const Field2D f = embed(build_phantom(default_phantoms().source, obj), sim);
  SolveOptions rec;
  rec.record_energy = true;
  {
    WaveStepper damped(WaveConfig{default_medium(sim), cfg.final_time, cfg.steps});
    const auto e = damped.solve(f, Field2D(sim), rec).energy;
    double worst = 0.0;
    for (std::size_t k = 1; k < e.size(); ++k) worst = std::max(worst, (e[k] - e[k - 1]) / e[k - 1]);
    s.add("energy non-increasing (max relative step growth)", worst, 1e-3);
  }
  {
    Medium m = default_medium(sim);
    for (double& v : m.a.values()) v = 0.0;
    WaveStepper lossless(WaveConfig{m, cfg.final_time, cfg.steps});
    const auto e = lossless.solve(f, Field2D(sim), rec).energy;
    double drift = 0.0;
    for (double v : e) drift = std::max(drift, std::abs(v - e.front()) / e.front());
    s.add("energy conserved for a = 0 (max relative drift)", drift, 1e-3);
  }

  const auto geom = SinogramGeom::for_grid(sim, 64);
  const double h = sim.spacing();
  for (double R : {0.3, 0.5}) {
    for (double cx : {0.0, 0.3}) {
      Field2D disc(sim);
      constexpr int q = 8;  // cell-average supersampling
      for (int iy = 0; iy < sim.n; ++iy) {
        for (int ix = 0; ix < sim.n; ++ix) {
          int inside = 0;
          for (int a = 0; a < q; ++a) {
            for (int b = 0; b < q; ++b) {
              const double x = sim.coord(ix) + h * ((a + 0.5) / q - 0.5) - cx;
              const double y = sim.coord(iy) + h * ((b + 0.5) / q - 0.5);
              inside += x * x + y * y <= R * R;
            }
          }
          disc(ix, iy) = static_cast<double>(inside) / (q * q);
        }
      }
      const Sinogram sin = radon_forward(disc, geom);
      double err = 0.0;
      double err_away = 0.0;  // rays farther than 2h from tangency
      for (int i = 0; i < geom.n_theta; ++i) {
        for (int j = 0; j < geom.n_s; ++j) {
          const double sj = geom.offset(j) - cx * std::cos(geom.angle(i));
          const double chord = std::abs(sj) < R ? 2.0 * std::sqrt(R * R - sj * sj) : 0.0;
          const double e = std::abs(sin.at(i, j) - chord);
          err = std::max(err, e);
          if (std::abs(std::abs(sj) - R) > 2.0 * h) err_away = std::max(err_away, e);
        }
      }
      char name[96];
      std::snprintf(name, sizeof name, "disc chord R=%.1f centre=(%.1f,0), max abs error", R, cx);
      char detail[80];
      std::snprintf(detail, sizeof detail, "away from tangent rays %.3e", err_away);
      s.add(name, err, 2.0 * h, detail);
    }
  }
  {
    const auto fine = SinogramGeom::for_grid(sim, 500);
    Field2D bump(sim);
    for (int iy = 0; iy < sim.n; ++iy) {
      for (int ix = 0; ix < sim.n; ++ix) {
        const double x = sim.coord(ix) - 0.2;
        const double y = sim.coord(iy) + 0.1;
        const double r2 = (x * x + y * y) / 0.36;
        bump(ix, iy) = r2 < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - r2)) : 0.0;
      }
    }
    s.add("fbp round trip on a smooth bump", rel_l2_error(fbp(radon_forward(bump, fine), sim), bump),
          0.05);
  }
}

void contraction_suite(Suite& s, const ExperimentConfig& cfg) {
  const WaveModel model(WaveConfig{default_medium(cfg.sim_grid()), cfg.final_time, cfg.steps},
                        cfg.object_grid());
  for (double lambda : {0.5, 1.0, 1.5}) {
    const auto rep = estimate_contraction(model, lambda, 12, cfg.seed);
    char name[64];
    std::snprintf(name, sizeof name, "contraction |I - %.1f V U|", lambda);
    char detail[64];
    std::snprintf(detail, sizeof detail, "max ratio over iterations %.4f", rep.max_ratio);
    s.add(name, rep.max_ratio, 0.98, detail);
  }
}

}  // namespace

std::vector<CheckResult> run_verify_suite(const std::string& suite, const ExperimentConfig& cfg,
                                          const std::function<void(const CheckResult&)>& on_result) {
  if (std::find(kVerifySuites.begin(), kVerifySuites.end(), suite) == kVerifySuites.end()) {
    throw ConfigError("unknown verify suite '" + suite + "'");
  }
  cfg.validate();
  Suite s{{}, on_result};
  if (suite == "adjoints" || suite == "all") adjoint_suite(s, cfg);
  if (suite == "oracles" || suite == "all") oracle_suite(s, cfg);
  if (suite == "contraction" || suite == "all") contraction_suite(s, cfg);
  return s.results;
}

std::string format_check(const CheckResult& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "[%s] %s: %.3e (tolerance %.1e)", r.passed ? "PASS" : "FAIL",
                r.name.c_str(), r.value, r.tolerance);
  std::string out = buf;
  if (!r.detail.empty()) out += "  " + r.detail;
  return out;
}

}  // namespace ffpat
