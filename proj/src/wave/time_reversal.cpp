#include "ffpat/wave/time_reversal.hpp"

#include <cmath>

#include "ffpat/core/errors.hpp"
#include "ffpat/core/random.hpp"
#include "ffpat/fields/transfer.hpp"
#include "ffpat/wave/harmonic.hpp"

namespace ffpat {

namespace {

void zero_inside_disc(Field2D& f) {
  const Grid& g = f.grid();
  for (int iy = 0; iy < g.n; ++iy) {
    for (int ix = 0; ix < g.n; ++ix) {
      const double x = g.coord(ix);
      const double y = g.coord(iy);
      if (x * x + y * y < 1.0) f(ix, iy) = 0.0;
    }
  }
}

void axpy(double alpha, const InitialPair& x, InitialPair& y) {
  for (std::size_t i = 0; i < y.f1.values().size(); ++i) {
    y.f1.values()[i] += alpha * x.f1.values()[i];
    y.f2.values()[i] += alpha * x.f2.values()[i];
  }
}

void scale(double alpha, InitialPair& x) {
  for (double& v : x.f1.values()) v *= alpha;
  for (double& v : x.f2.values()) v *= alpha;
}

}  // namespace

InitialPair time_reverse(const WaveModel& model, const Field2D& h) {
  if (!(h.grid() == model.sim_grid())) {
    throw StructuralError("time_reverse: data must live on the simulation grid");
  }
  // Reversed time τ = T - t turns -a v_t into +a v_τ: the forward stepper
  // from (h, 0), with v_t(0) = -v_τ(τ=T).
  WaveSolution v = model.stepper().solve(h, Field2D(h.grid()));
  for (double& x : v.ut.values()) x = -x;
  return {std::move(v.u), std::move(v.ut)};
}

Field2D forward_U(const WaveModel& model, const InitialPair& f) {
  if (!(f.f1.grid() == model.object_grid()) || !(f.f2.grid() == model.object_grid())) {
    throw StructuralError("forward_U: initial data must live on the object grid");
  }
  const Grid& sim = model.sim_grid();
  const InitialPair init{embed(f.f1, sim), embed(f.f2, sim)};
  Field2D u = solve_forward(model, init).u;
  zero_inside_disc(u);
  return u;
}

InitialPair neumann_V(const WaveModel& model, const Field2D& g) {
  if (!(g.grid() == model.sim_grid())) {
    throw StructuralError("neumann_V: data must live on the simulation grid");
  }
  const Field2D extended = harmonic_extend(g);
  InitialPair reversed = time_reverse(model, extended);
  const Field2D phi = harmonic_extend(reversed.f1);
  const InitialPair projected = project_P(reversed.f1, reversed.f2, phi);
  const Grid& object = model.object_grid();
  return {restrict_to(projected.f1, object, true), restrict_to(projected.f2, object, true)};
}

double energy_norm_squared(const WaveModel& model, const InitialPair& f) {
  const Grid& g = model.object_grid();
  const Field2D& c = model.object_speed();
  double grad = 0.0;
  double kinetic = 0.0;
  for (int iy = 0; iy < g.n; ++iy) {
    for (int ix = 0; ix < g.n; ++ix) {
      const double v = f.f1(ix, iy);
      if (ix + 1 < g.n) grad += (f.f1(ix + 1, iy) - v) * (f.f1(ix + 1, iy) - v);
      if (iy + 1 < g.n) grad += (f.f1(ix, iy + 1) - v) * (f.f1(ix, iy + 1) - v);
      const double cv = c(ix, iy);
      kinetic += f.f2(ix, iy) * f.f2(ix, iy) / (cv * cv);
    }
  }
  const double h = g.spacing();
  // |∇f|^2 h^2 with ∇ ≈ difference / h leaves the plain sum of squares.
  return grad + kinetic * h * h;
}

InitialPair smooth_random_pair(const Grid& object_grid, std::uint64_t seed) {
  NormalSource normal(seed);
  InitialPair out{Field2D(object_grid), Field2D(object_grid)};
  const Grid& g = object_grid;
  for (Field2D* f : {&out.f1, &out.f2}) {
    normal.fill(f->span());
    // Repeated 5-point averaging as a cheap low-pass filter.
    for (int pass = 0; pass < 30; ++pass) {
      Field2D s(g);
      for (int iy = 1; iy + 1 < g.n; ++iy) {
        for (int ix = 1; ix + 1 < g.n; ++ix) {
          s(ix, iy) = 0.5 * (*f)(ix, iy) + 0.125 * ((*f)(ix + 1, iy) + (*f)(ix - 1, iy) +
                                                     (*f)(ix, iy + 1) + (*f)(ix, iy - 1));
        }
      }
      *f = std::move(s);
    }
    for (int iy = 0; iy < g.n; ++iy) {
      for (int ix = 0; ix < g.n; ++ix) {
        const double r2 = g.coord(ix) * g.coord(ix) + g.coord(iy) * g.coord(iy);
        (*f)(ix, iy) *= r2 < 1.0 ? (1.0 - r2) : 0.0;
      }
    }
  }
  return out;
}

ContractionReport estimate_contraction(const WaveModel& model, double lambda, int iters,
                                       std::uint64_t seed) {
  if (iters < 1) throw ConfigError("estimate_contraction: iters must be >= 1");
  InitialPair x = smooth_random_pair(model.object_grid(), seed);
  ContractionReport report;
  for (int k = 0; k < iters; ++k) {
    const double nx = std::sqrt(energy_norm_squared(model, x));
    if (nx == 0.0) break;
    scale(1.0 / nx, x);
    InitialPair kx = x;
    axpy(-lambda, neumann_V(model, forward_U(model, x)), kx);
    const double ratio = std::sqrt(energy_norm_squared(model, kx));
    report.ratios.push_back(ratio);
    report.estimate = ratio;
    report.max_ratio = std::max(report.max_ratio, ratio);
    x = std::move(kx);
  }
  return report;
}

}  // namespace ffpat
