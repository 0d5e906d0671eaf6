#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "ffpat/core/errors.hpp"
#include "ffpat/core/verification.hpp"
#include "ffpat/fields/grid.hpp"
#include "ffpat/fields/io.hpp"
#include "ffpat/fields/phantom.hpp"
#include "ffpat/fields/transfer.hpp"

using namespace ffpat;

TEST_CASE("grid geometry") {
  Grid g(201, 1.0);
  CHECK(g.spacing() == doctest::Approx(0.01));
  CHECK(g.coord(100) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(Grid(801, 4.0).spacing() == doctest::Approx(0.01));
  CHECK(nested_offset(Grid(801, 4.0), g) == 300);
  CHECK(nested_offset(Grid(800, 4.0), g) == -1);
  CHECK_THROWS_AS(Grid(2, 1.0), ConfigError);
}

TEST_CASE("build_phantom examples") {
  Grid g(101, 1.0);
  PhantomSpec empty;
  CHECK(build_phantom(empty, g).max() == 0.0);
  CHECK(build_phantom(empty, g).min() == 0.0);
  empty.target = PhantomTarget::SpeedPerturbation;
  CHECK(build_phantom(empty, g).min() == 1.0);
  CHECK(build_phantom(empty, g).max() == 1.0);

  PhantomSpec one;
  one.bumps.push_back({0.0, 0.0, 0.5, 1.0, BumpProfile::Smooth});
  const Field2D f = build_phantom(one, g);
  CHECK(f(50, 50) == doctest::Approx(1.0).epsilon(1e-15));  // exp(1 - 1/1)
  CHECK(f(75, 50) == 0.0);                                   // r = 1 at (0.5, 0)
  // Closed form halfway out: exp(1 - 1/(1 - 0.25)).
  CHECK(f(50 + 12, 50) == doctest::Approx(std::exp(1.0 - 1.0 / (1.0 - 0.24 * 0.24 / 0.25))));
}

TEST_CASE("phantom support outside 0.95 is rejected") {
  PhantomSpec bad;
  bad.bumps.push_back({0.8, 0.0, 0.2, 1.0, BumpProfile::Smooth});
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  CHECK_THROWS_AS(build_phantom(bad, Grid(51, 1.0)), ConfigError);
}

TEST_CASE("default phantoms satisfy the medium bounds") {
  for (const Grid& g : {Grid(101, 1.0), Grid(401, 4.0)}) {
    const auto ph = default_phantoms();
    const Field2D c = build_phantom(ph.speed, g);
    const Field2D a = build_phantom(ph.attenuation, g);
    const Field2D f = build_phantom(ph.source, g);
    CHECK(c.max() <= 1.2 + 1e-12);
    CHECK(c.min() >= 1.0 - 1e-12);
    CHECK(a.min() >= 0.0);
    double outside = 0.0;
    for (int iy = 0; iy < g.n; ++iy)
      for (int ix = 0; ix < g.n; ++ix)
        if (std::hypot(g.coord(ix), g.coord(iy)) >= 0.95) outside = std::max(outside, std::abs(f(ix, iy)));
    CHECK(outside == 0.0);
    CHECK_NOTHROW(default_medium(g).validate());
  }
}

TEST_CASE("phantoms are bit-identical across builds") {
  const Grid g(101, 1.0);
  CHECK(build_phantom(default_phantoms().source, g).values() ==
        build_phantom(default_phantoms().source, g).values());
}

TEST_CASE("embed and restrict on nested grids") {
  const Grid obj(101, 1.0), sim(401, 4.0);
  const Field2D f = build_phantom(default_phantoms().source, obj);
  CHECK(embed(Field2D(obj), sim).max() == 0.0);
  const Field2D e = embed(f, sim);
  CHECK(restrict_to(e, obj).values() == f.values());
  double mass_f = 0.0, mass_e = 0.0;
  for (double v : f.values()) mass_f += v;
  for (double v : e.values()) mass_e += v;
  const double h = obj.spacing();
  CHECK(std::abs(mass_e * h * h - mass_f * h * h) <= 1e-3 * std::abs(mass_f * h * h));
  CHECK(dot_test(*embed_operator(obj, sim), 10, 1).max_discrepancy <= 1e-12);

  Field2D ones(sim, 1.0);
  const Field2D masked = restrict_to(ones, obj, true);
  for (int iy = 0; iy < obj.n; ++iy)
    for (int ix = 0; ix < obj.n; ++ix)
      if (std::hypot(obj.coord(ix), obj.coord(iy)) >= 1.0) CHECK(masked(ix, iy) == 0.0);
}

TEST_CASE("embed with a background value") {
  const Grid obj(11, 1.0), sim(41, 4.0);
  const Field2D c = embed(Field2D(obj, 1.0), sim, 1.0);
  CHECK(c.min() == 1.0);
  CHECK(c.max() == 1.0);
}

TEST_CASE("bilinear embedding between non-nested grids") {
  const Grid coarse(21, 1.0), fine(64, 2.0);
  Field2D lin(coarse);
  for (int iy = 0; iy < coarse.n; ++iy)
    for (int ix = 0; ix < coarse.n; ++ix) lin(ix, iy) = 2.0 * coarse.coord(ix) - coarse.coord(iy);
  const Field2D e = embed(lin, fine);
  // Bilinear interpolation reproduces linear functions inside the source square.
  for (int iy = 0; iy < fine.n; ++iy)
    for (int ix = 0; ix < fine.n; ++ix) {
      const double x = fine.coord(ix), y = fine.coord(iy);
      if (std::abs(x) < 0.99 && std::abs(y) < 0.99) CHECK(e(ix, iy) == doctest::Approx(2 * x - y));
    }
}

TEST_CASE("rel_l2_error examples") {
  const Grid g(31, 1.0);
  const Field2D ref = build_phantom(default_phantoms().source, g);
  CHECK(rel_l2_error(ref, ref) == 0.0);
  CHECK(rel_l2_error(Field2D(g), ref) == doctest::Approx(1.0).epsilon(1e-15));
  Field2D scaled = ref;
  for (double& v : scaled.values()) v *= 1.1;
  CHECK(std::abs(rel_l2_error(scaled, ref) - 0.1) <= 1e-12);
  CHECK_THROWS_AS(rel_l2_error(ref, Field2D(g)), NumericalError);
}

TEST_CASE("field and header round trip through files") {
  const auto dir = std::filesystem::temp_directory_path() / "ffpat_test_fields";
  std::filesystem::create_directories(dir);
  const Grid g(21, 1.0);
  const Field2D f = build_phantom(default_phantoms().source, g);
  write_field(dir / "f", f, "source");
  std::string role;
  const Field2D back = read_field(dir / "f", &role);
  CHECK(role == "source");
  CHECK(back.grid() == g);
  CHECK(back.values() == f.values());
  write_pgm(dir / "f.pgm", f);
  CHECK(std::filesystem::file_size(dir / "f.pgm") > static_cast<std::uintmax_t>(g.size()));
  CHECK_THROWS_AS(read_field(dir / "missing"), ConfigError);
  std::filesystem::remove_all(dir);
}
