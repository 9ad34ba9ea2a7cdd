#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/LU>

#include "support.hpp"
#include "tpm/basins.hpp"
#include "tpm/frames.hpp"
#include "tpm/power_method.hpp"

using namespace tpm;

namespace {

SymTensor mb(int d) { return frame_tensor(mercedes_benz(), d); }

double ratio(const Frame& f, const Eigen::VectorXd& x) {
  return -x.dot(f.vectors.col(1)) / x.dot(f.vectors.col(0));
}

}  // namespace

TEST_CASE("alpha_step examples") {
  CHECK(std::abs(alpha_step(0.3, 4) - 0.3) < 1e-15);
  for (int d = 4; d <= 10; d += 2) CHECK(std::abs(alpha_step(0.5, d) - 0.5) < 1e-15);
  CHECK(std::abs(alpha_step(0.3, 6) - 0.385528) < 1e-6);
  CHECK(test::kind_of([] { alpha_step(0.3, 2); }) == ErrorKind::InvalidArgs);
}

TEST_CASE("alpha_orbit") {
  const auto o = alpha_orbit(0.3, 6, 5);
  REQUIRE(o.size() == 5);
  CHECK(o[0] == alpha_step(0.3, 6));
  for (std::size_t k = 1; k < o.size(); ++k) CHECK(o[k] == alpha_step(o[k - 1], 6));
  CHECK(test::kind_of([] { alpha_orbit(0.0, 6, 3); }) == ErrorKind::InvalidArgs);
  CHECK(test::kind_of([] { alpha_orbit(1.0, 6, 3); }) == ErrorKind::InvalidArgs);
}

TEST_CASE("alpha orbits move toward 1/2 from either side for d >= 6") {
  for (int d = 6; d <= 12; d += 2)
    for (double a0 : {0.05, 0.2, 0.45, 0.55, 0.8, 0.95}) {
      const auto o = alpha_orbit(a0, d, 200);
      double prev = a0;
      for (double a : o) {
        CHECK(std::abs(a - 0.5) <= std::abs(prev - 0.5) + 1e-15);
        CHECK((a - 0.5) * (a0 - 0.5) >= 0.0);
        prev = a;
      }
      CHECK(std::abs(o.back() - 0.5) < 1e-9);
    }
}

TEST_CASE("alpha recursion matches the two-dimensional power step") {
  const Frame f = mercedes_benz();
  for (int d = 4; d <= 10; d += 2) {
    const SymTensor t = mb(d);
    for (double a0 : {0.1, 0.3, 0.7}) {
      // x with -<x, v2>/<x, v1> = a0 and <x, v1> > 0.
      const Eigen::Matrix2d g = f.vectors.leftCols(2).transpose();
      const Eigen::VectorXd x = g.partialPivLu().solve(Eigen::Vector2d(1.0, -a0));
      CHECK(std::abs(ratio(f, x) - a0) < 1e-12);
      const Eigen::VectorXd y = step(t, x);
      CHECK(std::abs(ratio(f, y) - alpha_step(a0, d)) < 1e-12);
    }
  }
}

TEST_CASE("small render at d = 6 labels pixels by the nearest signed frame vector") {
  const Frame f = mercedes_benz();
  const BasinGrid g = render_basins(mb(6), f, 64);
  CHECK(g.labels.size() == 64u * 64u);
  int checked = 0;
  for (int row = 0; row < 64; ++row)
    for (int col = 0; col < 64; ++col) {
      const Eigen::Vector2d p = BasinGrid::pixel_center(row, col, 64);
      if (p.norm() > 1.0) {
        CHECK(g.label(row, col) == kLabelOutside);
        continue;
      }
      const Eigen::VectorXd c = (f.vectors.transpose() * p).cwiseAbs();
      Eigen::Index best;
      const double top = c.maxCoeff(&best);
      double second = 0.0;
      for (Eigen::Index j = 0; j < c.size(); ++j)
        if (j != best) second = std::max(second, c(j));
      if (top - second < 0.05 * p.norm()) continue;
      ++checked;
      CHECK(g.label(row, col) == best);
    }
  CHECK(checked > 2500);
  const BasinStats s = basin_stats(g);
  CHECK(s.none == 0);
  CHECK(s.labeled + s.other == s.disk_pixels);
}

TEST_CASE("d = 4 render is all other") {
  const BasinGrid g = render_basins(mb(4), mercedes_benz(), 32);
  const BasinStats s = basin_stats(g);
  CHECK(s.other == s.disk_pixels);
  CHECK(s.max_iterations == 1);
}

TEST_CASE("render symmetry under the frame's reflection") {
  // u -> -u fixes v1 and swaps v2, v3, so mirrored columns swap labels 1 and 2.
  const BasinGrid g = render_basins(mb(8), mercedes_benz(), 48);
  const auto mirror = [](int l) { return l == 1 ? 2 : l == 2 ? 1 : l; };
  int mismatches = 0;
  for (int row = 0; row < 48; ++row)
    for (int col = 0; col < 48; ++col)
      if (g.label(row, 47 - col) != mirror(g.label(row, col))) ++mismatches;
  CHECK(mismatches == 0);
}

TEST_CASE("render argument checks") {
  CHECK(test::kind_of([] { render_basins(mb(6), mercedes_benz(), 8); }) == ErrorKind::InvalidArgs);
  CHECK(test::kind_of([] { render_basins(frame_tensor(cube_diagonals(), 6), cube_diagonals(), 32); }) ==
        ErrorKind::InvalidArgs);
}

TEST_CASE("PPM and sidecar") {
  const BasinGrid g = render_basins(mb(6), mercedes_benz(), 16);
  const std::string ppm = to_ppm(g);
  const std::string header = "P6\n16 16\n255\n";
  REQUIRE(ppm.size() == header.size() + 16 * 16 * 3);
  CHECK(ppm.compare(0, header.size(), header) == 0);
  // Top-left corner lies outside the disk.
  CHECK(static_cast<unsigned char>(ppm[header.size()]) == 255);
  CHECK(label_color(0) == Rgb{0, 0, 255});
  CHECK(label_color(1) == Rgb{255, 0, 0});
  CHECK(label_color(2) == Rgb{0, 160, 0});
  const std::string side = basin_sidecar_json(g);
  CHECK(side.find("\"resolution\"") != std::string::npos);
}

TEST_CASE("sector_check preconditions and tie skipping") {
  const Frame f = mercedes_benz();
  CHECK(test::kind_of([&] { sector_check(mb(4), f, 10, 1); }) == ErrorKind::PreconditionFailed);
  CHECK(test::kind_of([&] { sector_check(mb(7), f, 10, 1); }) == ErrorKind::PreconditionFailed);
  const SectorReport r = sector_check(mb(6), f, 50, 3);
  CHECK(r.samples == 50);
  CHECK(r.failed == 0);
  CHECK(r.skipped <= 1);
}
