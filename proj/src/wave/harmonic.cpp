#include "ffpat/wave/harmonic.hpp"

#include <sstream>

#include "ffpat/core/conjugate_gradient.hpp"
#include "ffpat/core/errors.hpp"

namespace ffpat {

namespace {

bool inside(const Grid& g, int ix, int iy) {
  const double x = g.coord(ix);
  const double y = g.coord(iy);
  return x * x + y * y < 1.0;
}

}  // namespace

Field2D harmonic_extend(const Field2D& g, HarmonicStats* stats) {
  const Grid& grid = g.grid();
  const int n = grid.n;

  // Unknown numbering over interior nodes; -1 marks a Dirichlet node.
  std::vector<int> id(grid.size(), -1);
  std::vector<std::pair<int, int>> nodes;
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      if (!inside(grid, ix, iy)) continue;
      if (ix == 0 || iy == 0 || ix == n - 1 || iy == n - 1) {
        throw StructuralError("harmonic_extend: grid " + grid.describe() +
                              " does not enclose the unit disc");
      }
      id[grid.index(ix, iy)] = static_cast<int>(nodes.size());
      nodes.emplace_back(ix, iy);
    }
  }

  const std::size_t m = nodes.size();
  Vector rhs(m, 0.0);
  constexpr int dx[4] = {1, -1, 0, 0};
  constexpr int dy[4] = {0, 0, 1, -1};
  for (std::size_t k = 0; k < m; ++k) {
    const auto [ix, iy] = nodes[k];
    for (int d = 0; d < 4; ++d) {
      const std::size_t nb = grid.index(ix + dx[d], iy + dy[d]);
      if (id[nb] < 0) rhs[k] += g.values()[nb];
    }
  }

  // 4 φ_i - Σ interior neighbours = Σ boundary neighbours (SPD).
  auto apply = [&](std::span<const double> x, std::span<double> y) {
    for (std::size_t k = 0; k < m; ++k) {
      const auto [ix, iy] = nodes[k];
      double s = 4.0 * x[k];
      for (int d = 0; d < 4; ++d) {
        const int j = id[grid.index(ix + dx[d], iy + dy[d])];
        if (j >= 0) s -= x[j];
      }
      y[k] = s;
    }
  };
  auto dot = [](std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  };

  // Start from the mean boundary value; constants are then exact.
  double mean = 0.0;
  int count = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (id[i] >= 0) continue;
    const int ix = static_cast<int>(i % n);
    const int iy = static_cast<int>(i / n);
    bool touches = false;
    for (int d = 0; d < 4 && !touches; ++d) {
      const int jx = ix + dx[d];
      const int jy = iy + dy[d];
      if (jx >= 0 && jy >= 0 && jx < n && jy < n && id[grid.index(jx, jy)] >= 0) touches = true;
    }
    if (touches) {
      mean += g.values()[i];
      ++count;
    }
  }
  if (count > 0) mean /= count;
  Vector phi(m, mean);

  const int max_iters = 10 * n;
  const CgResult res = conjugate_gradient(apply, dot, rhs, phi, 1e-12, max_iters);
  if (stats) *stats = {res.iterations, res.relative_residual};
  if (res.relative_residual > 1e-10) {
    std::ostringstream os;
    os << "harmonic_extend: CG stopped at relative residual " << res.relative_residual << " after "
       << res.iterations << " iterations";
    throw NumericalError(os.str());
  }

  Field2D out = g;
  for (std::size_t k = 0; k < m; ++k) out(nodes[k].first, nodes[k].second) = phi[k];
  return out;
}

InitialPair project_P(const Field2D& g, const Field2D& h, const Field2D& phi) {
  if (!(g.grid() == h.grid()) || !(g.grid() == phi.grid())) {
    throw StructuralError("project_P: fields on different grids");
  }
  const Grid& grid = g.grid();
  InitialPair out{Field2D(grid), Field2D(grid)};
  for (int iy = 0; iy < grid.n; ++iy) {
    for (int ix = 0; ix < grid.n; ++ix) {
      if (!inside(grid, ix, iy)) continue;
      out.f1(ix, iy) = g(ix, iy) - phi(ix, iy);
      out.f2(ix, iy) = h(ix, iy);
    }
  }
  return out;
}

}  // namespace ffpat
