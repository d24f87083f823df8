#include "ctflow/compare.hpp"
#include "ctflow/driver.hpp"
#include "ctflow/errors.hpp"

#include "../support/helpers.hpp"
#include "../support/oracles.hpp"
#include "doctest.h"

#include <cmath>
#include <string>

using namespace ctflow;
using namespace testing_support;
using doctest::Approx;

namespace {

ScenarioConfig small_slab(Scheme scheme)
{
  ScenarioConfig c;
  c.nx = 32;
  c.ny = 8;
  c.lx = 128;
  c.ly = 32;
  c.scheme = scheme;
  c.field.target_cv = 1.2;
  c.field.seed = 5;
  c.end_days = 40;
  return c;
}

} // namespace

TEST_CASE("scenario construction per geometry")
{
  ScenarioConfig c;
  const double q = 0.2 * 256 * 64 / 365.0;
  CHECK(injection_rate(c) == Approx(q));
  const Scenario slab = build_scenario(c);
  CHECK(slab.total_rate == Approx(q));
  CHECK(slab.pressure.boundary.left.kind == EdgeCondition::inflow);
  CHECK(slab.pressure.boundary.left.rate == Approx(q));
  CHECK(slab.pressure.boundary.right.kind == EdgeCondition::outflow);
  CHECK(slab.transport_boundary.left == EdgeKind::inflow);
  CHECK(slab.transport_boundary.right == EdgeKind::outflow);
  CHECK(slab.transport_boundary.top == EdgeKind::no_flow);
  CHECK(slab.pressure.wells.empty());
  CHECK(slab.initial.saturation.min() == 0.21);
  CHECK(slab.initial.ledger.initial_water == Approx(0.21 * 256 * 64));

  c.geometry = Geometry::five_spot_diagonal;
  const Scenario d = build_scenario(c);
  REQUIRE(d.pressure.wells.size() == 2);
  CHECK(d.pressure.wells[0].cell == CellIndex{0, 0});
  CHECK(d.pressure.wells[0].rate == Approx(q));
  CHECK(d.pressure.wells[1].cell == CellIndex{63, 15});
  CHECK(d.pressure.wells[1].rate == Approx(-q));
  CHECK(d.transport_boundary.left == EdgeKind::no_flow);

  c.geometry = Geometry::five_spot_parallel;
  const Scenario pl = build_scenario(c);
  REQUIRE(pl.pressure.wells.size() == 4);
  double net = 0.0, injected = 0.0;
  for (const auto& w : pl.pressure.wells) {
    net += w.rate;
    injected += std::max(0.0, w.rate);
  }
  CHECK(net == Approx(0.0).scale(1.0));
  CHECK(injected == Approx(q));

  c.time_scale = 24.0;
  CHECK(injection_rate(c) == Approx(q / 24.0));
}

TEST_CASE("scenario validation")
{
  ScenarioConfig c;
  c.cfl_nt = 0.6;
  CHECK_THROWS_AS(build_scenario(c), ConfigError);
  c = ScenarioConfig{};
  c.end_days = -1;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = ScenarioConfig{};
  c.snapshot_days = {10, 400};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = ScenarioConfig{};
  c.nx = 0;
  CHECK_THROWS(c.validate());
  c = ScenarioConfig{};
  c.geometry = Geometry::five_spot_diagonal;
  c.nx = 1;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = ScenarioConfig{};
  c.permeability = ScalarField(StructuredGrid(5, 3, 1, 1), 1.0);
  CHECK_THROWS_AS(build_scenario(c), ShapeError);
}

TEST_CASE("coarse permeability is prolonged onto the scenario grid")
{
  ScenarioConfig c;
  c.nx = 8;
  c.ny = 4;
  c.permeability = ScalarField(StructuredGrid(4, 2, 256, 64), {1, 2, 3, 4, 5, 6, 7, 8});
  const ScalarField k = resolve_permeability(c);
  CHECK(k.grid().nx() == 8);
  CHECK(k(0, 0) == 1);
  CHECK(k(1, 1) == 1);
  CHECK(k(7, 3) == 8);
}

TEST_CASE("time step selection examples")
{
  const StructuredGrid g(4, 4, 4, 4);
  TransportBoundary b;
  b.left = b.right = b.bottom = b.top = EdgeKind::periodic;
  TransportProblem p{uniform_velocity(g, 0.0, 0.0), FluxFunction::linear(), b, {}, 1.5};
  const ScalarField s(g, 0.5);
  CHECK(cfl_dt(s, p, 0.5, 7.0) == 7.0);
  p.velocity = uniform_velocity(g, 1.0, -1.0);
  CHECK(cfl_dt(s, p, 0.5, 7.0) == Approx(0.25));
  p.velocity = uniform_velocity(g, 2.0, -2.0);
  CHECK(cfl_dt(s, p, 0.5, 7.0) == Approx(0.125));
  CHECK(cfl_dt(s, p, 0.5, 0.1) == 0.1);
  CHECK_THROWS_AS(cfl_dt(s, p, 0.0, 1.0), ConfigError);
}

TEST_CASE("mass ledger examples")
{
  MassLedger l{10.0, 3.0, 1.0};
  CHECK(l.relative_imbalance(12.0) == 0.0);
  CHECK(l.relative_imbalance(13.0) == Approx(1.0 / 13.0));
  CHECK(MassLedger{10.0, 0, 0}.relative_imbalance(5.0) == Approx(0.5));
}

TEST_CASE("zero end time returns the initial state")
{
  ScenarioConfig c = small_slab(Scheme::kt);
  c.end_days = 0;
  const RunResult r = run(c);
  REQUIRE(r.snapshots.size() == 1);
  CHECK(r.snapshots[0].time_days == 0.0);
  CHECK(r.snapshots[0].saturation == build_scenario(c).initial.saturation);
  CHECK(r.report.pressure_solves == 0);
  CHECK(r.report.micro_steps == 0);
  CHECK(r.snapshots[0].mass_imbalance == 0.0);
}

TEST_CASE("runs balance water and respect the saturation bounds")
{
  for (Scheme s : {Scheme::nt, Scheme::kt}) {
    ScenarioConfig c = small_slab(s);
    c.snapshot_days = {10, 20, 40};
    const RunResult r = run(c);
    REQUIRE(r.snapshots.size() == 3);
    for (const auto& snap : r.snapshots) {
      CHECK(snap.time_days >= snap.requested_days - 1e-9);
      CHECK(snap.mass_imbalance <= 1e-10);
    }
    CHECK(r.report.max_mass_imbalance <= 1e-10);
    CHECK(r.report.min_saturation >= 0.21 - 1e-10);
    CHECK(r.report.max_saturation <= 0.85 + 1e-10);
    CHECK(r.report.pressure_solves == 4);
    CHECK(r.report.history.size() == 4);
    CHECK(r.final_state.time_days == Approx(40.0));
    // Water actually entered.
    CHECK(r.final_state.ledger.injected > 0.0);
    CHECK(r.final_state.saturation.integral() > r.final_state.ledger.initial_water);
  }
}

TEST_CASE("five-spot runs balance water")
{
  for (Scheme s : {Scheme::nt, Scheme::kt}) {
    ScenarioConfig c = small_slab(s);
    c.geometry = Geometry::five_spot_diagonal;
    c.nx = c.ny = 16;
    c.lx = c.ly = 64;
    c.end_days = 30;
    const RunResult r = run(c);
    CHECK(r.report.max_mass_imbalance <= 1e-10);
    CHECK(r.report.max_saturation <= 0.85 + 1e-10);
    const ScalarField& sat = r.snapshots.back().saturation;
    CHECK(sat(0, 0) > sat(15, 15));
  }
}

TEST_CASE("runs are deterministic")
{
  for (Scheme s : {Scheme::nt, Scheme::kt}) {
    const RunResult a = run(small_slab(s)), b = run(small_slab(s));
    CHECK(a.snapshots.back().saturation == b.snapshots.back().saturation);
    CHECK(a.report.micro_steps == b.report.micro_steps);
  }
}

TEST_CASE("results do not depend on the solver time unit")
{
  ScenarioConfig c = small_slab(Scheme::kt);
  const RunResult a = run(c);
  c.time_scale = 24.0;
  const RunResult b = run(c);
  CHECK(oracle::max_abs_diff(a.snapshots.back().saturation, b.snapshots.back().saturation) <=
        1e-9);
}

TEST_CASE("pressure period length does not matter when velocity is saturation independent")
{
  // Homogeneous slab: the velocity is uniform whatever the mobility.
  for (Scheme s : {Scheme::nt, Scheme::kt}) {
    ScenarioConfig c = small_slab(s);
    c.permeability_source = PermeabilitySource::constant;
    c.pressure_step_days = 40;
    const RunResult one = run(c);
    c.pressure_step_days = 5;
    const RunResult many = run(c);
    CHECK(many.report.pressure_solves == 8);
    const ScalarField &a = one.snapshots.back().saturation, &b = many.snapshots.back().saturation;
    CHECK(l1_error(a, b) <= 1e-3 * a.integral());
  }
}

TEST_CASE("pressure solver failures surface with the simulation time")
{
  ScenarioConfig c = small_slab(Scheme::kt);
  c.pcg.max_iter = 1;
  c.pcg.tol = 1e-14;
  try {
    run(c);
    FAIL("expected SolverError");
  } catch (const SolverError& e) {
    CHECK(std::string(e.what()).find("t = 0") != std::string::npos);
  }
}

TEST_CASE("advance_pressure_period refuses empty periods")
{
  const Scenario sc = build_scenario(small_slab(Scheme::nt));
  SimulationState st = sc.initial;
  CHECK_THROWS_AS(advance_pressure_period(sc, st, 0.0), ConfigError);
  int steps = 0;
  advance_pressure_period(sc, st, 2.0, [&](const SimulationState& s) {
    ++steps;
    CHECK(s.velocity_version == s.pressure_solves);
  });
  CHECK(steps == st.micro_steps);
  CHECK(st.time_days == 2.0);
}

TEST_CASE("zero injection leaves a uniform state unchanged")
{
  for (Scheme s : {Scheme::nt, Scheme::kt}) {
    ScenarioConfig c = small_slab(s);
    c.injection_rate_pv_per_year = 0.0;
    c.initial_saturation = 0.4;
    const RunResult r = run(c);
    CHECK(r.snapshots.back().saturation == ScalarField(StructuredGrid(32, 8, 128, 32), 0.4));
  }
}

TEST_CASE("one period on a homogeneous slab matches the analytic boundary exchange")
{
  for (Scheme s : {Scheme::nt, Scheme::kt}) {
    ScenarioConfig c = small_slab(s);
    c.permeability_source = PermeabilitySource::constant;
    const Scenario sc = build_scenario(c);
    SimulationState st = sc.initial;
    advance_pressure_period(sc, st, 10.0);
    // The front stays far from the outlet, so inflow carries f(0.85) = 1
    // and the outlet produces f(0.21) for the whole period.
    const double in = sc.total_rate * 10.0 * fractional_flow(c.fluid, 0.85);
    const double out = sc.total_rate * 10.0 * fractional_flow(c.fluid, 0.21);
    const double gain = st.saturation.integral() - st.ledger.initial_water;
    CHECK(st.ledger.injected == Approx(in).epsilon(1e-12));
    CHECK(st.ledger.produced == Approx(out).epsilon(1e-12));
    CHECK(std::abs(gain - (in - out)) <= 1e-8 * (in - out));
  }
}

TEST_CASE("splitting error stays below the scheme difference")
{
  ScenarioConfig c;
  c.permeability = load_fixture("0.5");
  c.scheme = Scheme::kt;
  const RunResult kt = run(c);
  c.pressure_step_days = 0.5 * c.effective_pressure_step();
  const RunResult kt_half = run(c);
  c.pressure_step_days = 0.0;
  c.scheme = Scheme::nt;
  const RunResult nt = run(c);
  const ScalarField& a = kt.snapshots.back().saturation;
  const double splitting = l2_relative_difference(a, kt_half.snapshots.back().saturation, a);
  const double schemes = l2_relative_difference(a, nt.snapshots.back().saturation, a);
  CHECK(splitting < schemes);
}
