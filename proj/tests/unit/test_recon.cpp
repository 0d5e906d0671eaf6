#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "ffpat/core/errors.hpp"
#include "ffpat/core/random.hpp"
#include "ffpat/core/verification.hpp"
#include "ffpat/recon/gradient.hpp"
#include "ffpat/recon/neumann.hpp"
#include "ffpat/recon/solvers.hpp"
#include "ffpat/radon/transform.hpp"

using namespace ffpat;

namespace {

using Matrix = std::vector<Vector>;

Vector mul(const Matrix& a, const Vector& x) {
  Vector y(a.size(), 0.0);
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t c = 0; c < x.size(); ++c) y[r] += a[r][c] * x[c];
  return y;
}

Vector mul_t(const Matrix& a, const Vector& y) {
  Vector x(a[0].size(), 0.0);
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t c = 0; c < x.size(); ++c) x[c] += a[r][c] * y[r];
  return x;
}

Matrix gram(const Matrix& a) {
  const std::size_t n = a[0].size();
  Matrix g(n, Vector(n, 0.0));
  for (const auto& row : a)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g[i][j] += row[i] * row[j];
  return g;
}

// Gaussian elimination with partial pivoting.
Vector solve(Matrix m, Vector b) {
  const std::size_t n = b.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(m[i][k]) > std::abs(m[p][k])) p = i;
    std::swap(m[k], m[p]);
    std::swap(b[k], b[p]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = m[i][k] / m[k][k];
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
      b[i] -= f * b[k];
    }
  }
  Vector x(n);
  for (std::size_t k = n; k-- > 0;) {
    double s = b[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= m[k][j] * x[j];
    x[k] = s / m[k][k];
  }
  return x;
}

OperatorPtr as_operator(const Matrix& a) {
  Vector flat;
  for (const auto& row : a) flat.insert(flat.end(), row.begin(), row.end());
  return dense_matrix(a.size(), a[0].size(), flat);
}

double max_diff(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

double norm2(const Vector& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

RunOptions quiet(int iters) {
  RunOptions o;
  o.stop.max_iters = iters;
  o.warn = [](const std::string&) {};
  return o;
}

const Matrix kA43 = {{2.0, -1.0, 0.5}, {0.3, 1.5, -0.7}, {1.0, 0.2, 2.2}, {-0.4, 0.9, 0.1}};
const Vector kY4 = {1.0, -2.0, 0.5, 3.0};

// Explicit matrix of an operator, column by column.
Matrix assemble(const LinearOperator& op) {
  const std::size_t n = op.domain().size();
  Matrix m(op.range().size(), Vector(n, 0.0));
  Vector e(n, 0.0);
  for (std::size_t c = 0; c < n; ++c) {
    e[c] = 1.0;
    const Vector col = op.apply(e);
    for (std::size_t r = 0; r < col.size(); ++r) m[r][c] = col[r];
    e[c] = 0.0;
  }
  return m;
}

}  // namespace

TEST_CASE("gradient examples") {
  const Grid g(9, 1.0);
  const double h = g.spacing();
  const GradientPair zero = gradient_D(Field2D(g, 3.0));
  CHECK(zero.d1.max() == 0.0);
  CHECK(zero.d1.min() == 0.0);
  CHECK(zero.d2.max() == 0.0);

  Field2D ramp(g);
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix) ramp(ix, iy) = 2.0 * g.coord(ix);
  const GradientPair d = gradient_D(ramp);
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix) {
      CHECK(d.d1(ix, iy) == doctest::Approx(ix + 1 < g.n ? 2.0 * h : 0.0));
      CHECK(d.d2(ix, iy) == doctest::Approx(0.0));
    }
}

TEST_CASE("divergence is the negative transpose of the gradient") {
  const Grid g(17, 1.0);
  const double h = g.spacing();
  CHECK(dot_test(*gradient_operator(g, VectorSpace({17, 17}, h * h)), 10, 3).max_discrepancy <= 1e-12);
  Vector w(g.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = 1.0 + 0.3 * std::sin(0.1 * i);
  const auto weighted = VectorSpace::weighted({17, 17}, h * h, w);
  CHECK(dot_test(*gradient_operator(g, weighted), 10, 4).max_discrepancy <= 1e-12);

  Field2D x(g);
  NormalSource(1).fill(x.values());
  GradientPair q{Field2D(g), Field2D(g)};
  NormalSource(2).fill(q.d1.values());
  NormalSource(3).fill(q.d2.values());
  const GradientPair dx = gradient_D(x);
  const Field2D div = divergence(q);
  double lhs = 0.0;
  double rhs = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    lhs += dx.d1.values()[i] * q.d1.values()[i] + dx.d2.values()[i] * q.d2.values()[i];
    rhs -= x.values()[i] * div.values()[i];
  }
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("cgne on the identity converges in one step") {
  const Matrix id = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  const Vector y = {1.0, -2.0, 3.0};
  const auto run = cgne(*as_operator(id), y, Vector(3, 0.0), quiet(1));
  CHECK(max_diff(run.final_iterate, y) < 1e-14);
}

TEST_CASE("cgne reaches the least squares solution of a small system") {
  const auto A = as_operator(kA43);
  const Vector oracle = solve(gram(kA43), mul_t(kA43, kY4));
  const auto run = cgne(*A, kY4, Vector(3, 0.0), quiet(3));
  CHECK(max_diff(run.final_iterate, oracle) <= 1e-8);
  for (std::size_t k = 1; k < run.residuals.size(); ++k) CHECK(run.residuals[k] <= run.residuals[k - 1] + 1e-10);

  const Matrix spd = {{4, 1, 0}, {1, 3, 0.5}, {0, 0.5, 2}};
  const Vector b = {1, 2, 3};
  const auto run2 = cgne(*as_operator(spd), b, Vector(3, 0.0), quiet(3));
  CHECK(max_diff(run2.final_iterate, solve(spd, b)) <= 1e-8);
}

TEST_CASE("cgne is semi-convergent on an ill-conditioned noisy problem") {
  const std::size_t n = 24;
  Matrix hilbert(n, Vector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) hilbert[i][j] = 1.0 / (i + j + 1.0);
  Vector truth(n);
  for (std::size_t i = 0; i < n; ++i) truth[i] = std::sin(0.3 * i);
  Vector y = mul(hilbert, truth);
  Vector noise(n);
  NormalSource(17).fill(noise);
  const double scale = 1e-3 * norm2(y) / norm2(noise);
  for (std::size_t i = 0; i < n; ++i) y[i] += scale * noise[i];
  RunOptions opts = quiet(24);
  opts.truth = truth;
  const auto run = cgne(*as_operator(hilbert), y, Vector(n, 0.0), opts);
  CHECK(run.best_iteration > 1);
  CHECK(run.best_iteration < run.iterations());
  CHECK(run.rel_errors.back() > 1.02 * run.best_error());
}

TEST_CASE("cgne semi-convergence on diag(1, 1e-2, 1e-4)") {
  // Each CG step resolves one more singular component; the third one
  // amplifies the noise by 1e4.
  const Matrix a = {{1, 0, 0}, {0, 1e-2, 0}, {0, 0, 1e-4}};
  const Vector truth = {1.0, 1.0, 1.0};
  Vector y = mul(a, truth);
  const Vector noise = {1e-3, -1e-3, 1e-3};
  for (std::size_t i = 0; i < 3; ++i) y[i] += noise[i];
  RunOptions opts = quiet(3);
  opts.truth = truth;
  const auto run = cgne(*as_operator(a), y, Vector(3, 0.0), opts);
  REQUIRE(run.rel_errors.size() == 3);
  CHECK(run.best_iteration == 2);
  CHECK(run.rel_errors[2] > run.rel_errors[1]);
}

TEST_CASE("landweber on diag(2, 1) follows the closed form") {
  const Matrix a = {{2, 0}, {0, 1}};
  const Vector y = {4.0, -3.0};
  const double gamma = 0.2;
  const auto run = landweber(*as_operator(a), y, Vector(2, 0.0), gamma, quiet(7), 2.0);
  // x_k = (1 - (1 - γ d^2)^k) y / d from x_0 = 0.
  const Vector expect = {(1.0 - std::pow(1.0 - gamma * 4.0, 7)) * 2.0,
                         (1.0 - std::pow(1.0 - gamma, 7)) * -3.0};
  CHECK(max_diff(run.final_iterate, expect) <= 1e-12);
  for (std::size_t k = 1; k < run.residuals.size(); ++k) CHECK(run.residuals[k] <= run.residuals[k - 1] + 1e-10);
}

TEST_CASE("landweber matches a dense loop and diverges loudly when overstepped") {
  const auto A = as_operator(kA43);
  const double gamma = 0.05;
  Vector x(3, 0.0);
  for (int k = 0; k < 40; ++k) {
    Vector r = mul(kA43, x);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= kY4[i];
    const Vector g = mul_t(kA43, r);
    for (std::size_t i = 0; i < 3; ++i) x[i] -= gamma * g[i];
  }
  CHECK(max_diff(landweber(*A, kY4, Vector(3, 0.0), gamma, quiet(40)).final_iterate, x) <= 1e-8);

  std::vector<std::string> warnings;
  RunOptions opts = quiet(200);
  opts.warn = [&](const std::string& w) { warnings.push_back(w); };
  CHECK_THROWS_AS(landweber(*A, kY4, Vector(3, 0.0), 1.0, opts), DivergenceError);
  CHECK(warnings.size() == 1);
}

TEST_CASE("steepest descent matches a dense exact line search") {
  Vector x(3, 0.0);
  std::vector<Vector> iterates;
  for (int k = 0; k < 6; ++k) {
    Vector r = mul(kA43, x);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = kY4[i] - r[i];
    const Vector g = mul_t(kA43, r);
    const Vector ag = mul(kA43, g);
    const double step = std::pow(norm2(g), 2) / std::pow(norm2(ag), 2);
    for (std::size_t i = 0; i < 3; ++i) x[i] += step * g[i];
    iterates.push_back(x);
  }
  RunOptions opts = quiet(6);
  opts.snapshot_stride = 1;
  const auto run = steepest_descent(*as_operator(kA43), kY4, Vector(3, 0.0), opts);
  CHECK(run.solver == "sd");
  REQUIRE(run.snapshots.size() == 6);
  for (std::size_t k = 0; k < 6; ++k) CHECK(max_diff(run.snapshots[k].second, iterates[k]) <= 1e-8);
}

TEST_CASE("fbs with zero weight is landweber, otherwise a dense proximal loop") {
  const auto A = as_operator(kA43);
  const Matrix dm = {{1, -1, 0}, {0, 1, -1}};
  const auto D = as_operator(dm);
  const double s = 0.08;
  const auto plain = fbs_quadratic(*A, *D, kY4, Vector(3, 0.0), 0.0, s, quiet(25));
  const auto lw = landweber(*A, kY4, Vector(3, 0.0), s, quiet(25));
  CHECK(max_diff(plain.final_iterate, lw.final_iterate) <= 1e-12);

  const double lambda = 0.7;
  Matrix prox = gram(dm);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) prox[i][j] *= s * lambda;
    prox[i][i] += 1.0;
  }
  Vector x(3, 0.0);
  for (int k = 0; k < 25; ++k) {
    Vector r = mul(kA43, x);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= kY4[i];
    const Vector g = mul_t(kA43, r);
    for (std::size_t i = 0; i < 3; ++i) x[i] -= s * g[i];
    x = solve(prox, x);
  }
  const auto reg = fbs_quadratic(*A, *D, kY4, Vector(3, 0.0), lambda, s, quiet(25));
  CHECK(max_diff(reg.final_iterate, x) <= 1e-8);
}

TEST_CASE("quadratic prox on the image gradient") {
  const Grid g(4, 1.0);
  const double h = g.spacing();
  const VectorSpace X({4, 4}, h * h);
  const auto D = gradient_operator(g, X);
  const Vector flat(16, 2.0);
  CHECK(max_diff(prox_quadratic(*D, flat, 5.0), flat) <= 1e-12);

  Vector v(16);
  NormalSource(8).fill(v);
  Matrix m = gram(assemble(*D));
  for (std::size_t i = 0; i < 16; ++i) {
    for (std::size_t j = 0; j < 16; ++j) m[i][j] *= 0.3;
    m[i][i] += 1.0;
  }
  CHECK(max_diff(prox_quadratic(*D, v, 0.3), solve(m, v)) <= 1e-8);
  CHECK(max_diff(prox_quadratic(*D, v, 0.0), v) == 0.0);
}

TEST_CASE("chambolle-pock TV denoising agrees with a dual projected gradient oracle") {
  const int n = 8;
  const Grid g(n, 1.0);
  const double h = g.spacing();
  const VectorSpace X({8, 8}, h * h);
  const auto A = identity(X);
  const auto D = gradient_operator(g, X);
  Vector y(g.size());
  NormalSource(31).fill(y);
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) y[iy * n + ix] = 0.2 * y[iy * n + ix] + (ix >= 3 && iy >= 2 ? 1.0 : 0.0);
  const double lambda = 0.15;

  // Oracle: min ½|x - y|^2 + λ Σ |(∇x)_i| has x = y - ∇^t q with q the
  // minimiser of ½|y - ∇^t q|^2 over |q_i| <= λ; projected gradient with step 1/8.
  const Matrix Dm = assemble(*D);
  const std::size_t m = g.size();
  Vector q(2 * m, 0.0);
  Vector x = y;
  for (int it = 0; it < 200000; ++it) {
    const Vector dx = mul(Dm, x);
    for (std::size_t i = 0; i < 2 * m; ++i) q[i] += dx[i] / 8.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double mag = std::hypot(q[i], q[m + i]);
      if (mag > lambda) {
        q[i] *= lambda / mag;
        q[m + i] *= lambda / mag;
      }
    }
    const Vector dtq = mul_t(Dm, q);
    for (std::size_t i = 0; i < m; ++i) x[i] = y[i] - dtq[i];
  }

  RunOptions opts = quiet(20000);
  const auto run = chambolle_pock_tv(*A, *D, y, Vector(m, 0.0), lambda, opts);
  CHECK(max_diff(run.final_iterate, x) <= 1e-3);
  for (double sup : run.dual_sup) CHECK(sup <= lambda * (1.0 + 1e-12));
}

TEST_CASE("chambolle-pock keeps zero data at zero") {
  const Grid g(6, 1.0);
  const VectorSpace X({6, 6}, 0.16);
  const auto run = chambolle_pock_tv(*identity(X), *gradient_operator(g, X), Vector(36, 0.0),
                                     Vector(36, 0.0), 0.5, quiet(10));
  CHECK(max_diff(run.final_iterate, Vector(36, 0.0)) == 0.0);
  CHECK_THROWS_AS(chambolle_pock_tv(*identity(X), *gradient_operator(g, X), Vector(36, 0.0),
                                    Vector(36, 0.0), 0.0, quiet(10)),
                  ConfigError);
}

TEST_CASE("solvers are deterministic and stop on the discrepancy rule") {
  const auto A = as_operator(kA43);
  const auto a = cgne(*A, kY4, Vector(3, 0.0), quiet(3));
  const auto b = cgne(*A, kY4, Vector(3, 0.0), quiet(3));
  CHECK(a.final_iterate == b.final_iterate);
  CHECK(a.residuals == b.residuals);

  RunOptions opts = quiet(100);
  opts.stop.discrepancy_tau = 1.2;
  opts.stop.noise_norm = 3.0;  // least squares residual is about 3.43
  const auto lw = landweber(*A, kY4, Vector(3, 0.0), 0.05, opts);
  CHECK(lw.iterations() < 100);
  CHECK(lw.residuals.back() <= 3.6);
}

TEST_CASE("run csv layout") {
  ReconRun run;
  run.solver = "cgne";
  run.residuals = {1.0, 0.5};
  run.rel_errors = {0.25, 0.125};
  run.wall_ms = {1.0, 2.0};
  const auto dir = std::filesystem::temp_directory_path() / "ffpat_test_recon";
  std::filesystem::create_directories(dir);
  write_run_csv(dir / "r.csv", run);
  std::ifstream in(dir / "r.csv");
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  CHECK(header == "iter,residual,rel_error");
  CHECK(first == "1,1,0.25");
  std::filesystem::remove_all(dir);
}

TEST_CASE("neumann series maps zero data to zero and rejects bad weights") {
  const Grid sim(97, 4.0);
  const WaveModel model(WaveConfig{default_medium(sim), 3.0, 90}, Grid(25, 1.0));
  RunOptions opts = quiet(2);
  InitialPair pair;
  const auto run = neumann_series_recon(model, Field2D(sim), 1.0, opts, &pair);
  CHECK(run.iterations() == 2);
  CHECK(pair.f1.max() == 0.0);
  CHECK(pair.f1.min() == 0.0);
  CHECK(pair.f2.max() == 0.0);
  CHECK_THROWS_AS(neumann_series_recon(model, Field2D(sim), 2.0, opts), ConfigError);
}

TEST_CASE("neumann series error shrinks on noiseless data") {
  const Grid sim(97, 4.0);
  const WaveModel model(WaveConfig{default_medium(sim), 3.0, 90}, Grid(25, 1.0));
  const Field2D f = build_phantom(default_phantoms().source, model.object_grid());
  const Field2D g = forward_U(model, InitialPair{f, Field2D(model.object_grid())});
  RunOptions opts = quiet(4);
  opts.truth = f.values();
  const auto run = neumann_series_recon(model, g, 1.0, opts);
  for (std::size_t k = 1; k < run.rel_errors.size(); ++k) CHECK(run.rel_errors[k] < run.rel_errors[k - 1]);
}
