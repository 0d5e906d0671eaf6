#include "ffpat/wave/wave_operators.hpp"

#include "ffpat/core/errors.hpp"
#include "ffpat/fields/transfer.hpp"

namespace ffpat {

namespace {

Vector inverse_square(const Field2D& c) {
  Vector w(c.values().size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = 1.0 / (c.values()[i] * c.values()[i]);
  return w;
}

std::vector<std::size_t> shape_of(const Grid& g) {
  return {static_cast<std::size_t>(g.n), static_cast<std::size_t>(g.n)};
}

Field2D mask_disc(Field2D f) {
  const Grid& g = f.grid();
  for (int iy = 0; iy < g.n; ++iy) {
    const double y = g.coord(iy);
    for (int ix = 0; ix < g.n; ++ix) {
      const double x = g.coord(ix);
      if (x * x + y * y >= 1.0) f(ix, iy) = 0.0;
    }
  }
  return f;
}

// (g, -c^2 a g) on the simulation grid.
InitialPair coupled_pair(const WaveModel& model, Field2D g) {
  const Medium& m = model.config().medium;
  Field2D second(g.grid());
  if (model.config().source_coupling) {
    for (std::size_t i = 0; i < second.values().size(); ++i) {
      const double c = m.c.values()[i];
      second.values()[i] = -c * c * m.a.values()[i] * g.values()[i];
    }
  }
  return {std::move(g), std::move(second)};
}

}  // namespace

WaveModel::WaveModel(WaveConfig cfg, const Grid& object_grid)
    : stepper_(std::make_shared<const WaveStepper>(std::move(cfg))), object_grid_(object_grid) {
  const Grid& sim = stepper_->grid();
  if (object_grid_.half_width > sim.half_width) {
    throw ConfigError("wave: object grid " + object_grid_.describe() +
                      " exceeds the simulation grid " + sim.describe());
  }
  object_c_ = restrict_to(stepper_->config().medium.c, object_grid_);
  const double ho = object_grid_.spacing();
  const double hs = sim.spacing();
  object_space_ = VectorSpace::weighted(shape_of(object_grid_), ho * ho, inverse_square(object_c_));
  sim_space_ =
      VectorSpace::weighted(shape_of(sim), hs * hs, inverse_square(stepper_->config().medium.c));
  sim_uniform_space_ = VectorSpace(shape_of(sim), hs * hs);
}

WaveSolution solve_forward(const WaveModel& model, const InitialPair& init,
                           const SolveOptions& options) {
  return model.stepper().solve(init.f1, init.f2, options);
}

Field2D forward_W(const WaveModel& model, const Field2D& f, const SolveOptions& options) {
  if (!(f.grid() == model.object_grid())) {
    throw StructuralError("forward_W: source must live on the object grid");
  }
  Field2D embedded = embed(mask_disc(f), model.sim_grid(), 0.0);
  return solve_forward(model, coupled_pair(model, std::move(embedded)), options).u;
}

Field2D adjoint_W(const WaveModel& model, const Field2D& g) {
  if (!(g.grid() == model.sim_grid())) {
    throw StructuralError("adjoint_W: data must live on the simulation grid");
  }
  // In reversed time τ = T - t the adjoint equation is the forward one with
  // q(τ=0) = g and q_τ(τ=0) = -c^2 a g.
  const WaveSolution q = solve_forward(model, coupled_pair(model, g));
  return restrict_to(q.u, model.object_grid(), /*mask_unit_disc=*/true);
}

OperatorPtr wave_operator(std::shared_ptr<const WaveModel> model) {
  const Grid object = model->object_grid();
  const Grid sim = model->sim_grid();
  auto apply = [model, object](std::span<const double> x, std::span<double> y) {
    const Field2D f(object, Vector(x.begin(), x.end()));
    const Field2D u = forward_W(*model, f);
    std::copy(u.values().begin(), u.values().end(), y.begin());
  };
  auto adjoint = [model, sim](std::span<const double> y, std::span<double> x) {
    const Field2D g(sim, Vector(y.begin(), y.end()));
    const Field2D q = adjoint_W(*model, g);
    std::copy(q.values().begin(), q.values().end(), x.begin());
  };
  return make_operator(model->object_space(), model->sim_space(), apply, adjoint, "W");
}

OperatorPtr sim_reweight_operator(const WaveModel& model) {
  return identity(model.sim_space(), model.sim_uniform_space());
}

}  // namespace ffpat
