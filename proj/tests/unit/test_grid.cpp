#include "ctflow/errors.hpp"
#include "ctflow/grid.hpp"

#include "doctest.h"

#include <cmath>
#include <random>

using namespace ctflow;

TEST_CASE("grid geometry and face counts")
{
  const StructuredGrid g(8, 4, 16.0, 2.0);
  CHECK(g.dx() == doctest::Approx(2.0));
  CHECK(g.dy() == doctest::Approx(0.5));
  CHECK(g.cell_count() == 32);
  CHECK(g.x_face_count() == 9 * 4);
  CHECK(g.y_face_count() == 8 * 5);
  CHECK(g.x_center(0) == doctest::Approx(1.0));
  CHECK(g.y_center(3) == doctest::Approx(1.75));
  CHECK(g.index(3, 2) == 2 * 8 + 3);
}

TEST_CASE("grid rejects empty or degenerate extents")
{
  CHECK_THROWS_AS(StructuredGrid(0, 4, 1.0, 1.0), ShapeError);
  CHECK_THROWS_AS(StructuredGrid(4, -1, 1.0, 1.0), ShapeError);
  CHECK_THROWS_AS(StructuredGrid(4, 4, 0.0, 1.0), ShapeError);
  CHECK_THROWS_AS(ScalarField(StructuredGrid(2, 2, 1, 1), std::vector<double>(3)), ShapeError);
}

TEST_CASE("staggered_neighbors on a 4x4 grid")
{
  const StructuredGrid g(4, 4, 4.0, 4.0);
  const auto a = staggered_neighbors(g, 0, 0);
  CHECK(a[0] == CellIndex{0, 0});
  CHECK(a[1] == CellIndex{1, 0});
  CHECK(a[2] == CellIndex{0, 1});
  CHECK(a[3] == CellIndex{1, 1});
  const auto b = staggered_neighbors(g, 2, 2);
  CHECK(b[0] == CellIndex{2, 2});
  CHECK(b[3] == CellIndex{3, 3});
  CHECK_THROWS_AS(staggered_neighbors(g, 3, 0), IndexError);
  CHECK_THROWS_AS(staggered_neighbors(g, 0, -1), IndexError);
}

TEST_CASE("staggered neighbours each own one quadrant of the staggered cell")
{
  const StructuredGrid g(5, 4, 5.0, 8.0);
  for (int k = 0; k + 1 < g.ny(); ++k)
    for (int j = 0; j + 1 < g.nx(); ++j) {
      const double xv = (j + 1) * g.dx(), yv = (k + 1) * g.dy();
      for (const auto c : staggered_neighbors(g, j, k)) {
        // The overlap of the cell with [xv-dx/2, xv+dx/2] x [yv-dy/2, yv+dy/2].
        const double ox = std::min((c.j + 1) * g.dx(), xv + 0.5 * g.dx()) -
                          std::max(c.j * g.dx(), xv - 0.5 * g.dx());
        const double oy = std::min((c.k + 1) * g.dy(), yv + 0.5 * g.dy()) -
                          std::max(c.k * g.dy(), yv - 0.5 * g.dy());
        CHECK(ox * oy == doctest::Approx(0.25 * g.cell_area()));
      }
    }
}

TEST_CASE("restrict_field examples")
{
  const StructuredGrid fine(4, 4, 1.0, 1.0);
  const ScalarField c = restrict_field(ScalarField(fine, 0.3), 2);
  for (double v : c.values())
    CHECK(v == doctest::Approx(0.3));

  const ScalarField f22(StructuredGrid(2, 2, 1, 1), {1, 2, 3, 4});
  const ScalarField r = restrict_field(f22, 2);
  CHECK(r.size() == 1);
  CHECK(r[0] == doctest::Approx(2.5));

  ScalarField checker(fine);
  for (int k = 0; k < 4; ++k)
    for (int j = 0; j < 4; ++j)
      checker(j, k) = (j + k) % 2;
  const ScalarField rc = restrict_field(checker, 2);
  for (double v : rc.values())
    CHECK(v == doctest::Approx(0.5));

  CHECK_THROWS_AS(restrict_field(ScalarField(StructuredGrid(6, 4, 1, 1)), 4), ShapeError);
}

TEST_CASE("restriction preserves the domain integral")
{
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-1.0, 2.0);
  for (int factor : {2, 4}) {
    const StructuredGrid g(16, 8, 3.0, 1.5);
    ScalarField f(g);
    for (auto& v : f.values())
      v = U(rng);
    const ScalarField c = restrict_field(f, factor);
    CHECK(std::abs(c.integral() - f.integral()) <= 1e-12 * std::abs(f.integral()));
  }
}

TEST_CASE("prolongation inverts restriction on block-constant data")
{
  ScalarField c(StructuredGrid(3, 2, 6, 4), {1, 2, 3, 4, 5, 6});
  const ScalarField f = prolong_field(c, 4);
  CHECK(f.grid().nx() == 12);
  CHECK(f(5, 3) == 2.0);
  CHECK(restrict_field(f, 4) == c);
}

TEST_CASE("net outflow of a uniform face field")
{
  const StructuredGrid g(3, 2, 3, 2);
  FaceVelocityField v(g);
  for (auto& x : v.vx_values())
    x = 1.5;
  const ScalarField d = net_outflow(v);
  CHECK(d(1, 1) == doctest::Approx(0.0));
  CHECK(v.center_vx(2, 0) == doctest::Approx(1.5));
  CHECK(v.max_abs() == doctest::Approx(1.5));
}
