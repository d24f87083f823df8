#include "ctflow/driver.hpp"

#include "ctflow/errors.hpp"
#include "ctflow/snapshot_io.hpp"
#include "ctflow/transport_kt.hpp"
#include "ctflow/transport_nt.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace ctflow {

const char* to_string(Geometry g)
{
  switch (g) {
  case Geometry::slab: return "slab";
  case Geometry::five_spot_diagonal: return "five-spot-diagonal";
  case Geometry::five_spot_parallel: return "five-spot-parallel";
  }
  return "?";
}

const char* to_string(Scheme s)
{
  return s == Scheme::nt ? "nt" : "kt";
}

const char* to_string(PermeabilitySource s)
{
  switch (s) {
  case PermeabilitySource::generate: return "generate";
  case PermeabilitySource::file: return "file";
  case PermeabilitySource::constant: return "constant";
  }
  return "?";
}

void ScenarioConfig::validate() const
{
  (void)StructuredGrid(nx, ny, lx, ly);
  fluid.validate();
  check_theta(theta);
  if (geometry != Geometry::slab && (nx < 2 || ny < 2))
    throw ConfigError("five-spot geometries need at least 2x2 cells");
  if (!(initial_saturation >= 0.0 && initial_saturation <= fluid.s_max()))
    throw ConfigError("initial saturation must lie in [0, 1 - s_ro]");
  if (!(injection_saturation >= 0.0 && injection_saturation <= 1.0))
    throw ConfigError("injection saturation must lie in [0, 1]");
  if (!(injection_rate_pv_per_year >= 0.0) || !std::isfinite(injection_rate_pv_per_year))
    throw ConfigError("injection rate must be non-negative");
  if (!(cfl_nt > 0.0 && cfl_nt <= kNtCourantLimit))
    throw ConfigError("NT CFL number must lie in (0, 0.5]");
  if (!(cfl_kt > 0.0 && cfl_kt <= 1.0))
    throw ConfigError("KT CFL number must lie in (0, 1]");
  if (!(end_days >= 0.0) || !std::isfinite(end_days))
    throw ConfigError("end time must be non-negative");
  if (pressure_step_days < 0.0 || !std::isfinite(pressure_step_days))
    throw ConfigError("pressure step must be positive");
  if (!(time_scale > 0.0) || !std::isfinite(time_scale))
    throw ConfigError("time scale must be positive");
  for (double t : snapshot_days)
    if (!(t >= 0.0 && t <= end_days))
      throw ConfigError("snapshot times must lie in [0, end time]");
  if (!(pcg.tol > 0.0))
    throw ConfigError("PCG tolerance must be positive");
  if (permeability_source == PermeabilitySource::constant && !(constant_permeability > 0.0))
    throw ConfigError("constant permeability must be positive");
  if (permeability_source == PermeabilitySource::file && field_path.empty() && !permeability)
    throw ConfigError("permeability file path missing");
}

double ScenarioConfig::effective_pressure_step() const
{
  if (pressure_step_days > 0.0)
    return pressure_step_days;
  return end_days > 0.0 ? end_days / 4.0 : 1.0;
}

std::vector<double> ScenarioConfig::effective_snapshot_days() const
{
  std::vector<double> t = snapshot_days.empty() ? std::vector<double>{end_days} : snapshot_days;
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  return t;
}

double MassLedger::relative_imbalance(double current_water) const
{
  const double scale = std::max({std::abs(current_water), std::abs(initial_water), 1e-300});
  return std::abs(current_water - initial_water - (injected - produced)) / scale;
}

namespace {

ScalarField fit_to_grid(const ScalarField& k, const StructuredGrid& g)
{
  if (k.grid() == g)
    return k;
  const auto& kg = k.grid();
  if (g.nx() % kg.nx() == 0 && g.ny() % kg.ny() == 0 && g.nx() / kg.nx() == g.ny() / kg.ny() &&
      std::abs(kg.lx() - g.lx()) <= 1e-12 * g.lx() && std::abs(kg.ly() - g.ly()) <= 1e-12 * g.ly())
    return prolong_field(k, g.nx() / kg.nx());
  throw ShapeError("permeability raster does not match the scenario grid");
}

std::string with_context(const Error& e, const SimulationState& state)
{
  std::ostringstream msg;
  msg << e.what() << " (t = " << state.time_days << " days, step " << state.micro_steps
      << ", saturation range [" << state.saturation.min() << ", " << state.saturation.max()
      << "])";
  return msg.str();
}

TransportStepResult step_with_context(Scheme scheme, const SimulationState& state,
                                      const TransportProblem& tp, double dt)
{
  try {
    return scheme == Scheme::nt ? nt_step(state.saturation, tp, dt)
                                : kt_step(state.saturation, tp, dt);
  } catch (const TimeStepError& e) {
    throw TimeStepError(with_context(e, state));
  } catch (const BlowUpError& e) {
    throw BlowUpError(with_context(e, state));
  }
}

} // namespace

ScalarField resolve_permeability(const ScenarioConfig& c)
{
  const StructuredGrid g(c.nx, c.ny, c.lx, c.ly);
  if (c.permeability)
    return fit_to_grid(*c.permeability, g);
  switch (c.permeability_source) {
  case PermeabilitySource::constant:
    return ScalarField(g, c.constant_permeability);
  case PermeabilitySource::file:
    return fit_to_grid(read_snapshot(std::filesystem::path(c.field_path)).field, g);
  case PermeabilitySource::generate: {
    FieldSpec spec = c.field;
    spec.nx = c.nx;
    spec.ny = c.ny;
    spec.lx = c.lx;
    spec.ly = c.ly;
    return generate_field(spec);
  }
  }
  throw ConfigError("unknown permeability source");
}

double injection_rate(const ScenarioConfig& c)
{
  return c.injection_rate_pv_per_year * c.lx * c.ly / 365.0 / c.time_scale;
}

Scenario build_scenario(const ScenarioConfig& config)
{
  config.validate();
  const StructuredGrid g(config.nx, config.ny, config.lx, config.ly);
  ScalarField sat(g, config.initial_saturation);
  const double q = injection_rate(config);

  PressureBoundary pb;
  TransportBoundary tb;
  tb.injection_saturation = config.injection_saturation;
  std::vector<WellSource> wells;
  const int jl = g.nx() - 1, kl = g.ny() - 1;
  switch (config.geometry) {
  case Geometry::slab:
    pb.left = {EdgeCondition::inflow, q};
    pb.right = {EdgeCondition::outflow, q};
    tb.left = EdgeKind::inflow;
    tb.right = EdgeKind::outflow;
    break;
  case Geometry::five_spot_diagonal:
    wells = {{{0, 0}, q}, {{jl, kl}, -q}};
    break;
  case Geometry::five_spot_parallel:
    wells = {{{0, 0}, 0.5 * q}, {{jl, kl}, 0.5 * q}, {{jl, 0}, -0.5 * q}, {{0, kl}, -0.5 * q}};
    break;
  }

  PressureProblem pp{g, resolve_permeability(config), sat, config.fluid, pb, wells};
  pp.validate();

  FluxFunction flux =
      config.linear_flux ? FluxFunction::linear() : FluxFunction::buckley_leverett(config.fluid);
  SimulationState st{0.0, sat, ScalarField(g), FaceVelocityField(g), 0, 0, -1, {}};
  st.ledger.initial_water = sat.integral();
  return Scenario{config, std::move(pp), tb, std::move(flux), std::move(st), q};
}

PeriodStats advance_pressure_period(const Scenario& sc, SimulationState& state,
                                    double period_days, const StepObserver& on_step)
{
  if (!(period_days > 0.0))
    throw ConfigError("pressure period must be positive");
  const auto& cfg = sc.config;

  PressureProblem pp = sc.pressure;
  pp.saturation = state.saturation;
  PressureSolution ps = [&] {
    try {
      return solve_pressure(pp, cfg.pcg);
    } catch (const SolverError& e) {
      std::ostringstream msg;
      msg << e.what() << " (t = " << state.time_days << " days, pressure solve "
          << state.pressure_solves + 1 << ")";
      throw SolverError(msg.str(), e.residual(), e.iterations());
    }
  }();
  state.pressure = std::move(ps.pressure);
  state.velocity = std::move(ps.velocity);
  ++state.pressure_solves;
  state.velocity_version = state.pressure_solves;

  TransportProblem tp{state.velocity, sc.flux, sc.transport_boundary, sc.pressure.wells,
                      cfg.theta};
  PeriodStats stats{ps.iterations, ps.relative_residual, 0, state.saturation.min(),
                    state.saturation.max()};

  // Solver time runs in units of 1 / time_scale days.
  const double span = period_days * cfg.time_scale;
  const double start_days = state.time_days;
  double elapsed = 0.0;
  while (span - elapsed > 1e-12 * span) {
    if (state.velocity_version != state.pressure_solves)
      throw InvalidStateError("transport would use stale velocities");
    const double remaining = span - elapsed;
    const double dt = cfl_dt(state.saturation, tp, cfg.cfl(), remaining);
    TransportStepResult r = step_with_context(cfg.scheme, state, tp, dt);
    state.saturation = std::move(r.saturation);
    state.ledger.injected += r.exchange.injected;
    state.ledger.produced += r.exchange.produced;
    elapsed = dt >= remaining ? span : elapsed + dt;
    state.time_days = start_days + elapsed / cfg.time_scale;
    ++state.micro_steps;
    ++stats.micro_steps;
    stats.min_saturation = std::min(stats.min_saturation, state.saturation.min());
    stats.max_saturation = std::max(stats.max_saturation, state.saturation.max());
    if (on_step)
      on_step(state);
  }
  state.time_days = start_days + period_days;
  return stats;
}

RunResult run(const ScenarioConfig& config)
{
  return run(build_scenario(config));
}

RunResult run(const Scenario& sc)
{
  const auto t0 = std::chrono::steady_clock::now();
  const auto& cfg = sc.config;
  SimulationState state = sc.initial;
  RunResult out{{}, state, {}};
  RunReport& rep = out.report;
  rep.min_saturation = state.saturation.min();
  rep.max_saturation = state.saturation.max();

  const std::vector<double> wanted = cfg.effective_snapshot_days();
  std::size_t next = 0;
  auto take_due = [&](const SimulationState& s) {
    const double imbalance = s.ledger.relative_imbalance(s.saturation.integral());
    rep.max_mass_imbalance = std::max(rep.max_mass_imbalance, imbalance);
    // Tolerance absorbs the rounding of accumulated step lengths.
    while (next < wanted.size() && s.time_days >= wanted[next] - 1e-9 * (1.0 + wanted[next])) {
      out.snapshots.push_back({wanted[next], s.time_days, s.saturation, imbalance});
      ++next;
    }
  };
  take_due(state);

  const double dtp = cfg.effective_pressure_step();
  while (cfg.end_days - state.time_days > 1e-12 * cfg.end_days) {
    const double period = std::min(dtp, cfg.end_days - state.time_days);
    const PeriodStats ps = advance_pressure_period(sc, state, period, take_due);
    rep.pcg_iterations += ps.pcg_iterations;
    rep.max_pcg_residual = std::max(rep.max_pcg_residual, ps.pcg_residual);
    rep.min_saturation = std::min(rep.min_saturation, ps.min_saturation);
    rep.max_saturation = std::max(rep.max_saturation, ps.max_saturation);
    rep.history.push_back({state.time_days, ps.min_saturation, ps.max_saturation});
  }
  take_due(state);

  rep.pressure_solves = state.pressure_solves;
  rep.micro_steps = state.micro_steps;
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.final_state = std::move(state);
  return out;
}

} // namespace ctflow
