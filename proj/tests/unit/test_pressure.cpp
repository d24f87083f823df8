#include "ctflow/errors.hpp"
#include "ctflow/fieldgen.hpp"
#include "ctflow/pressure.hpp"

#include "doctest.h"

#include <cmath>
#include <random>

using namespace ctflow;
using doctest::Approx;

namespace {

PressureProblem slab(int nx, int ny, double lx, double ly, double rate, ScalarField perm)
{
  const StructuredGrid g(nx, ny, lx, ly);
  PressureBoundary b;
  b.left = {EdgeCondition::inflow, rate};
  b.right = {EdgeCondition::outflow, rate};
  return {g, std::move(perm), ScalarField(g, 0.5), FluidModel{}, b, {}};
}

// net_outflow sees the boundary faces, so only wells remain as sources.
double max_divergence_error(const PressureProblem& p, const FaceVelocityField& v)
{
  const ScalarField div = net_outflow(v);
  ScalarField q(p.grid);
  for (const auto& w : p.wells)
    q(w.cell.j, w.cell.k) += w.rate;
  double m = 0.0;
  for (std::size_t i = 0; i < div.size(); ++i)
    m = std::max(m, std::abs(div[i] - q[i]));
  return m;
}

double rhs_norm(const PressureProblem& p)
{
  const ScalarField q = cell_sources(p);
  double s = 0.0;
  for (double v : q.values())
    s += v * v;
  return std::sqrt(s);
}

} // namespace

TEST_CASE("harmonic transmissibility examples")
{
  CHECK(harmonic_transmissibility(2.0, 2.0, 1.0, 1.0) == Approx(2.0));
  CHECK(harmonic_transmissibility(1.0, 3.0, 1.0, 1.0) == Approx(1.5));
  CHECK(harmonic_transmissibility(1.0, 1e15, 1.0, 1.0) == Approx(2.0));
  CHECK_THROWS_AS(harmonic_transmissibility(0.0, 1.0, 1.0, 1.0), InvalidStateError);
}

TEST_CASE("face transmissibility of adjacent cells")
{
  const StructuredGrid g(2, 2, 2, 2);
  PressureProblem p{g, ScalarField(g, {1, 3, 1, 1}), ScalarField(g, 0.85), FluidModel{}, {}, {}};
  const double lam = total_mobility(FluidModel{}, 0.85);
  CHECK(face_transmissibility(p, {0, 0}, {1, 0}) == Approx(1.5 * lam));
  CHECK(face_transmissibility(p, {0, 0}, {0, 1}) == Approx(lam));
  CHECK_THROWS_AS(face_transmissibility(p, {0, 0}, {1, 1}), IndexError);
}

TEST_CASE("two-cell assembly and solve")
{
  const StructuredGrid g(2, 1, 2, 1);
  PressureProblem p = slab(2, 1, 2, 1, 1.0, ScalarField(g, 1.0));
  const LinearSystem sys = assemble(p);
  CHECK(sys.rhs[0] == Approx(1.0));
  CHECK(sys.rhs[1] == Approx(-1.0));
  const double t = sys.east[0];
  CHECK(sys.diag[0] == Approx(t));
  CHECK(sys.diag[1] == Approx(t));
  const PcgResult r = solve_pcg(sys);
  CHECK(r.pressure[0] - r.pressure[1] == Approx(1.0 / t));
  CHECK(r.pressure[0] + r.pressure[1] == Approx(0.0).scale(1.0));
  const FaceVelocityField v = recover_velocities(p, r.pressure);
  CHECK(v.vx(1, 0) == Approx(1.0));
}

TEST_CASE("pure Neumann problem without sources")
{
  const StructuredGrid g(4, 3, 4, 3);
  PressureProblem p{g, ScalarField(g, 1.0), ScalarField(g, 0.3), FluidModel{}, {}, {}};
  const LinearSystem sys = assemble(p);
  for (double b : sys.rhs)
    CHECK(b == 0.0);
  const PressureSolution s = solve_pressure(p);
  CHECK(s.velocity.max_abs() == 0.0);
  for (double v : s.pressure.values())
    CHECK(v == Approx(0.0).scale(1.0));
}

TEST_CASE("well pair enters the right-hand side at two cells")
{
  const StructuredGrid g(4, 4, 4, 4);
  PressureProblem p{g, ScalarField(g, 1.0), ScalarField(g, 0.3), FluidModel{}, {},
                    {{{0, 0}, 2.0}, {{3, 3}, -2.0}}};
  const LinearSystem sys = assemble(p);
  int nonzero = 0;
  double sum = 0.0;
  for (double b : sys.rhs) {
    nonzero += b != 0.0;
    sum += b;
  }
  CHECK(nonzero == 2);
  CHECK(sum == 0.0);
  p.wells[1].rate = -1.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  CHECK_THROWS_AS(assemble(p), ConfigError);
}

TEST_CASE("assembled operator is symmetric positive definite off the constants")
{
  FieldSpec fs;
  fs.nx = 12;
  fs.ny = 7;
  fs.lx = 12;
  fs.ly = 7;
  fs.target_cv = 1.2;
  const ScalarField k = generate_field(fs);
  PressureProblem p = slab(12, 7, 12, 7, 1.0, k);
  const LinearSystem sys = assemble(p);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> N;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> x(sys.diag.size()), y(x.size());
    double mean = 0.0;
    for (auto& v : x)
      mean += (v = N(rng));
    mean /= double(x.size());
    for (auto& v : x)
      v -= mean;
    sys.apply(x, y);
    double q = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
      q += x[i] * y[i];
    CHECK(q > 0.0);
  }
  // Row sums vanish.
  std::vector<double> one(sys.diag.size(), 1.0), y(one.size());
  sys.apply(one, y);
  for (double v : y)
    CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("manufactured solution is recovered")
{
  FieldSpec fs;
  fs.nx = 16;
  fs.ny = 16;
  fs.lx = 16;
  fs.ly = 16;
  fs.target_cv = 0.5;
  fs.seed = 9;
  const StructuredGrid g(16, 16, 16, 16);
  PressureProblem p{g, generate_field(fs), ScalarField(g, 0.4), FluidModel{}, {}, {}};
  LinearSystem sys = assemble(p);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> U(-1, 1);
  std::vector<double> xs(sys.diag.size());
  double mean = 0.0;
  for (auto& v : xs)
    mean += (v = U(rng));
  mean /= double(xs.size());
  for (auto& v : xs)
    v -= mean;
  sys.apply(xs, sys.rhs);
  for (auto pc : {Preconditioner::jacobi, Preconditioner::incomplete_cholesky}) {
    const PcgResult r = solve_pcg(sys, {1e-12, 0, pc});
    double err = 0.0, nx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      err = std::max(err, std::abs(r.pressure[i] - xs[i]));
      nx = std::max(nx, std::abs(xs[i]));
    }
    CHECK(err < 1e-8 * nx);
    CHECK(r.relative_residual <= 1e-12);
  }
}

TEST_CASE("diagonal system returns the scaled right-hand side")
{
  // Four disconnected cells: set every transmissibility to zero and a unit
  // diagonal; the rhs is already zero-mean.
  LinearSystem sys(StructuredGrid(2, 2, 2, 2));
  sys.diag = {1, 1, 1, 1};
  sys.east = {0, 0, 0, 0};
  sys.north = {0, 0, 0, 0};
  sys.rhs = {1, -1, 2, -2};
  const PcgResult r = solve_pcg(sys);
  for (int i = 0; i < 4; ++i)
    CHECK(r.pressure[i] == Approx(sys.rhs[i]));
}

TEST_CASE("PCG failure carries the achieved residual")
{
  FieldSpec fs;
  fs.nx = 32;
  fs.ny = 32;
  fs.lx = 32;
  fs.ly = 32;
  fs.target_cv = 2.2;
  PressureProblem p = slab(32, 32, 32, 32, 1.0, generate_field(fs));
  try {
    solve_pressure(p, {1e-14, 3, Preconditioner::jacobi});
    FAIL("expected SolverError");
  } catch (const SolverError& e) {
    CHECK(e.iterations() == 3);
    CHECK(e.residual() > 1e-14);
  }
}

TEST_CASE("homogeneous slab pressure is linear and velocity uniform")
{
  const StructuredGrid g(32, 8, 64, 16);
  PressureProblem p = slab(32, 8, 64, 16, 3.0, ScalarField(g, 2.0));
  const PressureSolution s = solve_pressure(p, {1e-12, 0, Preconditioner::jacobi});
  const double slope = (s.pressure(1, 0) - s.pressure(0, 0)) / g.dx();
  for (int k = 0; k < 8; ++k)
    for (int j = 0; j < 32; ++j)
      CHECK(std::abs(s.pressure(j, k) - (s.pressure(0, 0) + slope * j * g.dx())) < 1e-8);
  for (int k = 0; k < 8; ++k)
    for (int j = 0; j <= 32; ++j)
      CHECK(s.velocity.vx(j, k) == Approx(3.0 / 16.0).epsilon(1e-9));
  for (double v : s.velocity.vy_values())
    CHECK(std::abs(v) < 1e-10);
}

TEST_CASE("recovered velocities are locally conservative on heterogeneous media")
{
  for (double cv : {0.5, 1.2, 2.2}) {
    FieldSpec fs;
    fs.target_cv = cv;
    fs.seed = 21;
    PressureProblem p = slab(64, 16, 256, 64, 1.0, generate_field(fs));
    const PcgOptions opt{1e-10, 0, Preconditioner::jacobi};
    const PressureSolution s = solve_pressure(p, opt);
    CHECK(max_divergence_error(p, s.velocity) <= 10 * opt.tol * rhs_norm(p));
  }
}

TEST_CASE("scaling permeability scales pressure and keeps velocity")
{
  FieldSpec fs;
  fs.nx = 16;
  fs.ny = 8;
  fs.lx = 16;
  fs.ly = 8;
  fs.target_cv = 1.2;
  const ScalarField k = generate_field(fs);
  ScalarField k3 = k;
  for (auto& v : k3.values())
    v *= 3.0;
  const PcgOptions opt{1e-12, 0, Preconditioner::incomplete_cholesky};
  const PressureSolution a = solve_pressure(slab(16, 8, 16, 8, 1.0, k), opt);
  const PressureSolution b = solve_pressure(slab(16, 8, 16, 8, 1.0, k3), opt);
  for (std::size_t i = 0; i < a.pressure.size(); ++i)
    CHECK(b.pressure[i] == Approx(a.pressure[i] / 3.0).epsilon(1e-8).scale(1.0));
  for (std::size_t i = 0; i < a.velocity.vx_values().size(); ++i)
    CHECK(b.velocity.vx_values()[i] == Approx(a.velocity.vx_values()[i]).epsilon(1e-8).scale(1.0));
}
