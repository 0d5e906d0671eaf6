#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "ffpat/core/errors.hpp"
#include "ffpat/core/random.hpp"
#include "ffpat/core/verification.hpp"
#include "ffpat/radon/filter.hpp"
#include "ffpat/radon/io.hpp"
#include "ffpat/radon/mask.hpp"
#include "ffpat/radon/transform.hpp"

using namespace ffpat;

namespace {

constexpr double kPi = std::numbers::pi;

Field2D random_field(const Grid& g, std::uint64_t seed) {
  Field2D f(g);
  NormalSource(seed).fill(f.values());
  return f;
}

// Bilinear value of a node field at (x, y), zero off the grid.
double bilinear(const Field2D& f, double x, double y) {
  const Grid& g = f.grid();
  const double h = g.spacing();
  const double fx = (x + g.half_width) / h;
  const double fy = (y + g.half_width) / h;
  const int ix = static_cast<int>(std::floor(fx));
  const int iy = static_cast<int>(std::floor(fy));
  double v = 0.0;
  for (int dy = 0; dy <= 1; ++dy)
    for (int dx = 0; dx <= 1; ++dx) {
      const int jx = ix + dx;
      const int jy = iy + dy;
      if (jx < 0 || jy < 0 || jx >= g.n || jy >= g.n) continue;
      const double w = (1.0 - std::abs(fx - jx)) * (1.0 - std::abs(fy - jy));
      v += w * f(jx, jy);
    }
  return v;
}

// Reference ray sum: samples at t = k h along (-sin, cos), far past the grid.
double ray_sum(const Field2D& f, double theta, double s) {
  const double h = f.grid().spacing();
  const long reach = static_cast<long>(std::ceil(2.0 * f.grid().half_width / h)) + 2;
  double acc = 0.0;
  for (long k = -reach; k <= reach; ++k) {
    const double t = static_cast<double>(k) * h;
    acc += bilinear(f, s * std::cos(theta) - t * std::sin(theta), s * std::sin(theta) + t * std::cos(theta));
  }
  return acc * h;
}

double max_abs(const Vector& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST_CASE("sinogram geometry") {
  const auto geom = SinogramGeom::for_grid(Grid(401, 4.0), 250);
  CHECK(geom.ds == doctest::Approx(0.02));
  CHECK(geom.n_s % 2 == 1);
  CHECK(geom.offset((geom.n_s - 1) / 2) == 0.0);
  CHECK(geom.offset(geom.n_s - 1) >= 4.0 * std::sqrt(2.0) - 1e-12);
  CHECK(geom.angle_degrees(125) == doctest::Approx(90.0));
  SinogramGeom bad{4, 10, 0.1};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("zero image gives zero sinogram") {
  const Grid g(41, 1.0);
  const auto sin = radon_forward(Field2D(g), SinogramGeom::for_grid(g, 12));
  CHECK(max_abs(sin.values) == 0.0);
}

TEST_CASE("forward projection matches a reference ray sum") {
  const Grid g(31, 1.0);
  const Field2D f = random_field(g, 21);
  const auto geom = SinogramGeom::for_grid(g, 7);
  const auto sin = radon_forward(f, geom);
  for (int i = 0; i < geom.n_theta; ++i)
    for (int j = 0; j < geom.n_s; j += 3) {
      CAPTURE(i);
      CAPTURE(j);
      CHECK(sin.at(i, j) == doctest::Approx(ray_sum(f, geom.angle(i), geom.offset(j))).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("single node stencil") {
  const Grid g(21, 1.0);
  const double h = g.spacing();
  Field2D delta(g);
  delta(10, 10) = 1.0;
  const auto geom = SinogramGeom::for_grid(g, 4);  // 0, 45, 90, 135 degrees
  const auto sin = radon_forward(delta, geom);
  const int c = (geom.n_s - 1) / 2;
  CHECK(sin.at(0, c) == doctest::Approx(h));
  CHECK(sin.at(0, c + 1) == doctest::Approx(0.0));
  // On the diagonal the neighbouring samples sit h/√2 off the node in both axes.
  const double w = (1.0 - 1.0 / std::sqrt(2.0)) * (1.0 - 1.0 / std::sqrt(2.0));
  CHECK(sin.at(1, c) == doctest::Approx(h * (1.0 + 2.0 * w)));
}

TEST_CASE("disc chord lengths away from tangent rays") {
  // Near |s| = R the chord has a square-root edge that no grid resolves, so
  // the unit check excludes a 2h band there; the literal criterion is scored
  // by the acceptance binary.
  const Grid g(201, 2.0);
  const double h = g.spacing();
  const auto geom = SinogramGeom::for_grid(g, 16);
  for (double R : {0.3, 0.5}) {
    for (double cx : {0.0, 0.3}) {
      Field2D disc(g);
      constexpr int q = 8;
      for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix) {
          int in = 0;
          for (int a = 0; a < q; ++a)
            for (int b = 0; b < q; ++b) {
              const double x = g.coord(ix) + h * ((a + 0.5) / q - 0.5) - cx;
              const double y = g.coord(iy) + h * ((b + 0.5) / q - 0.5);
              in += x * x + y * y <= R * R;
            }
          disc(ix, iy) = static_cast<double>(in) / (q * q);
        }
      const auto sin = radon_forward(disc, geom);
      double worst = 0.0;
      for (int i = 0; i < geom.n_theta; ++i)
        for (int j = 0; j < geom.n_s; ++j) {
          const double s = geom.offset(j) - cx * std::cos(geom.angle(i));
          if (std::abs(std::abs(s) - R) <= 2.0 * h) continue;
          const double chord = std::abs(s) < R ? 2.0 * std::sqrt(R * R - s * s) : 0.0;
          worst = std::max(worst, std::abs(sin.at(i, j) - chord));
        }
      CAPTURE(R);
      CAPTURE(cx);
      CHECK(worst <= 2.0 * h);
    }
  }
}

TEST_CASE("rotating the image by 90 degrees shifts the sinogram") {
  const Grid g(41, 1.0);
  Field2D f(g);
  const Field2D noise = random_field(g, 5);
  const Field2D disc = unit_disc_indicator(g);
  for (std::size_t i = 0; i < f.values().size(); ++i) f.values()[i] = noise.values()[i] * disc.values()[i];
  Field2D rot(g);  // rot(x) = f(R^-1 x), R the rotation by +90 degrees
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix) rot(ix, iy) = f(iy, g.n - 1 - ix);
  const auto geom = SinogramGeom::for_grid(g, 8);
  const auto a = radon_forward(f, geom);
  const auto b = radon_forward(rot, geom);
  const int quarter = geom.n_theta / 2;
  const double scale = max_abs(a.values);
  for (int i = 0; i < geom.n_theta; ++i)
    for (int j = 0; j < geom.n_s; ++j) {
      const double expected = i >= quarter ? a.at(i - quarter, j) : a.at(i + quarter, geom.n_s - 1 - j);
      CHECK(std::abs(b.at(i, j) - expected) <= 1e-10 * scale);
    }
}

TEST_CASE("X and its transpose are adjoint") {
  const Grid g(45, 1.0);
  const auto geom = SinogramGeom::for_grid(g, 17);
  CHECK(dot_test(*radon_operator(g, geom), 10, 7).max_discrepancy <= 1e-10);
  CHECK(dot_test(*radon_operator(g, geom, lambda_space(geom)), 10, 8).max_discrepancy <= 1e-10);
  const Field2D x = random_field(g, 2);
  Sinogram y(geom);
  NormalSource(3).fill(y.values);
  const Vector lhs = radon_forward(x, geom).values;
  const Field2D bt = backproject(y, g);
  double a = 0.0;
  double b = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i) a += lhs[i] * y.values[i];
  for (std::size_t i = 0; i < bt.values().size(); ++i) b += bt.values()[i] * x.values()[i];
  CHECK(a == doctest::Approx(b).epsilon(1e-12));
}

TEST_CASE("lambda filter on pure modes") {
  const SinogramGeom geom{3, 63, 0.05};
  Sinogram dc(geom);
  dc.values.assign(geom.size(), 2.5);
  CHECK(max_abs(lambda_filter(dc).values) < 1e-12);

  for (int m : {1, 4, 31}) {
    Sinogram wave(geom);
    for (int i = 0; i < geom.n_theta; ++i)
      for (int j = 0; j < geom.n_s; ++j) wave.at(i, j) = std::cos(2.0 * kPi * m * j / geom.n_s + i);
    const double gain = m / (2.0 * geom.n_s * geom.ds);  // |ω|/(4π)
    const auto out = lambda_filter(wave);
    for (std::size_t k = 0; k < out.values.size(); ++k) CHECK(out.values[k] == doctest::Approx(gain * wave.values[k]));
  }
}

TEST_CASE("lambda is self-adjoint and positive semi-definite") {
  const SinogramGeom geom{5, 41, 0.1};
  auto L = lambda_operator(geom);
  CHECK(dot_test(*L, 10, 4).max_discrepancy <= 1e-10);
  Vector u(geom.size());
  NormalSource(9).fill(u);
  CHECK(lambda_space(geom).inner(u, u) >= 0.0);
}

TEST_CASE("fbp is linear and maps zero to zero") {
  const Grid g(41, 1.0);
  const auto geom = SinogramGeom::for_grid(g, 30);
  CHECK(max_abs(fbp(Sinogram(geom), g).values()) == 0.0);
  Sinogram a(geom);
  Sinogram b(geom);
  NormalSource(1).fill(a.values);
  NormalSource(2).fill(b.values);
  Sinogram sum(geom);
  for (std::size_t i = 0; i < sum.values.size(); ++i) sum.values[i] = 3.0 * a.values[i] + b.values[i];
  const Field2D fa = fbp(a, g);
  const Field2D fb = fbp(b, g);
  const Field2D fs = fbp(sum, g);
  Field2D expect(g);
  for (std::size_t i = 0; i < expect.values().size(); ++i)
    expect.values()[i] = 3.0 * fa.values()[i] + fb.values()[i];
  CHECK(rel_l2_error(fs, expect) < 1e-12);
}

TEST_CASE("fbp round trip on a smooth bump") {
  // The filter is applied without zero padding, so the detector window has
  // to be wide compared with the bump for the periodic tail to stay small.
  const Grid g(401, 4.0);
  Field2D bump(g);
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix) {
      const double x = g.coord(ix) - 0.2;
      const double y = g.coord(iy) + 0.1;
      const double r2 = (x * x + y * y) / 0.36;
      bump(ix, iy) = r2 < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - r2)) : 0.0;
    }
  const auto geom = SinogramGeom::for_grid(g, 500);
  CHECK(rel_l2_error(fbp(radon_forward(bump, geom), g), bump) <= 0.05);
}

TEST_CASE("mask examples") {
  const SinogramGeom geom{8, 21, 0.1};  // s in [-1, 1], angles 0, 22.5, ...
  MaskSpec spec;
  spec.exterior_radius = 0.5;
  spec.theta_min_deg = 45.0;
  spec.theta_max_deg = 180.0;
  const auto pat = mask_pattern(geom, spec);
  CHECK(pat[0 * 21 + 0] == 0);   // theta 0 is outside the range
  CHECK(pat[2 * 21 + 0] == 1);   // theta 45, s = -1
  CHECK(pat[2 * 21 + 10] == 0);  // s = 0
  CHECK(pat[2 * 21 + 5] == 1);   // s = -0.5 sits on the inclusive boundary
  CHECK(pat[2 * 21 + 6] == 0);

  Sinogram ones(geom);
  ones.values.assign(geom.size(), 1.0);
  const auto once = apply_mask(ones, spec);
  const auto twice = apply_mask(once, spec);
  CHECK(once.values == twice.values);
  CHECK(once.mask == twice.mask);
  for (std::size_t k = 0; k < pat.size(); ++k) CHECK(once.values[k] == static_cast<double>(pat[k]));

  MaskSpec bad;
  bad.theta_min_deg = 90.0;
  bad.theta_max_deg = 10.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("mask operators") {
  const Grid g(33, 1.0);
  const auto geom = SinogramGeom::for_grid(g, 10);
  MaskSpec spec;
  spec.theta_max_deg = 135.0;
  CHECK(dot_test(*mask_operator(geom, spec, geom.space()), 10, 1).max_discrepancy <= 1e-10);
  CHECK_THROWS_AS(mask_operator(geom, spec, lambda_space(geom)), StructuralError);
  auto MX = masked_radon_operator(g, geom, spec, lambda_space(geom));
  CHECK(dot_test(*MX, 10, 2).max_discrepancy <= 1e-10);
  const Field2D f = random_field(g, 6);
  const Vector direct = MX->apply(f.values());
  const auto ref = apply_mask(radon_forward(f, geom), spec);
  CHECK(direct == ref.values);
}

TEST_CASE("sinogram file round trip") {
  const auto dir = std::filesystem::temp_directory_path() / "ffpat_test_radon";
  std::filesystem::create_directories(dir);
  const SinogramGeom geom{6, 11, 0.25};
  MaskSpec spec;
  spec.exterior_radius = 0.5;
  spec.theta_min_deg = 30.0;
  Sinogram sin(geom);
  NormalSource(12).fill(sin.values);
  sin = apply_mask(sin, spec);
  write_sinogram(dir / "s", sin, spec);
  MaskSpec back_spec;
  const Sinogram back = read_sinogram(dir / "s", &back_spec);
  CHECK(back.values == sin.values);
  CHECK(back.mask == sin.mask);
  CHECK(back.geom.ds == geom.ds);
  CHECK(back_spec.theta_min_deg == 30.0);

  std::ofstream(dir / "broken.hdr") << "n_theta = 6\n";
  std::ofstream(dir / "broken.bin") << "x";
  CHECK_THROWS_AS(read_sinogram(dir / "broken"), ConfigError);
  std::filesystem::remove_all(dir);
}
