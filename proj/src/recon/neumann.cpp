#include "ffpat/recon/neumann.hpp"

#include <cmath>

#include "ffpat/core/errors.hpp"

namespace ffpat {

namespace {

double exterior_norm(const Field2D& r) {
  const Grid& g = r.grid();
  const double h = g.spacing();
  double sum = 0.0;
  for (int iy = 0; iy < g.n; ++iy) {
    for (int ix = 0; ix < g.n; ++ix) {
      const double x = g.coord(ix);
      const double y = g.coord(iy);
      if (x * x + y * y >= 1.0) sum += r(ix, iy) * r(ix, iy);
    }
  }
  return std::sqrt(sum) * h;
}

}  // namespace

ReconRun neumann_series_recon(const WaveModel& model, const Field2D& g, double lambda,
                              const RunOptions& options, InitialPair* final_pair) {
  if (!(lambda > 0.0 && lambda < 2.0)) throw ConfigError("neumann: lambda must lie in (0, 2)");
  if (!(g.grid() == model.sim_grid())) throw StructuralError("neumann: data not on simulation grid");
  RunRecorder rec("neumann", options);
  const double T = model.config().final_time;
  if (!(T > kOmegaDiameter)) {
    rec.warn("final time does not exceed diam(Omega) = 2; convergence is not guaranteed");
  }

  const Grid& obj = model.object_grid();
  InitialPair x{Field2D(obj), Field2D(obj)};
  Field2D r = g;
  for (int k = 1; k <= options.stop.max_iters; ++k) {
    const InitialPair step = neumann_V(model, r);
    for (std::size_t i = 0; i < obj.size(); ++i) {
      x.f1.values()[i] += lambda * step.f1.values()[i];
      x.f2.values()[i] += lambda * step.f2.values()[i];
    }
    const Field2D ux = forward_U(model, x);
    for (std::size_t i = 0; i < r.values().size(); ++i) r.values()[i] = g.values()[i] - ux.values()[i];
    if (rec.record(k, exterior_norm(r), x.f1.span())) break;
  }
  if (final_pair) *final_pair = x;
  return rec.finish(x.f1.span(), "max_iters");
}

}  // namespace ffpat
