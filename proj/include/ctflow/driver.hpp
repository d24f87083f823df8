#pragma once

#include "ctflow/fieldgen.hpp"
#include "ctflow/pressure.hpp"
#include "ctflow/transport.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ctflow {

enum class Geometry { slab, five_spot_diagonal, five_spot_parallel };
enum class Scheme { nt, kt };
enum class PermeabilitySource { generate, file, constant };

const char* to_string(Geometry g);
const char* to_string(Scheme s);
const char* to_string(PermeabilitySource s);

/// Full description of one simulation. Times are in days; one pore volume
/// is lx * ly (unit porosity, unit depth).
struct ScenarioConfig
{
  Geometry geometry = Geometry::slab;
  int nx = 64;
  int ny = 16;
  double lx = 256.0;
  double ly = 64.0;
  FluidModel fluid;

  PermeabilitySource permeability_source = PermeabilitySource::generate;
  FieldSpec field;         // grid members are replaced by the scenario grid
  std::string field_path;  // raster for PermeabilitySource::file
  double constant_permeability = 1.0;
  /// Takes precedence over permeability_source when set. A coarser field
  /// whose dimensions divide the scenario grid is prolonged.
  std::optional<ScalarField> permeability;

  double initial_saturation = 0.21;
  double injection_rate_pv_per_year = 0.2;
  double injection_saturation = 0.85;

  Scheme scheme = Scheme::nt;
  double theta = kDefaultTheta;
  double cfl_nt = 0.5;
  double cfl_kt = 0.25;

  double end_days = 275.0;
  double pressure_step_days = 0.0; // <= 0 selects end_days / 4
  std::vector<double> snapshot_days; // empty selects {end_days}
  /// Solver time units per day. Rates are expressed per solver time unit,
  /// so results in days do not depend on it.
  double time_scale = 1.0;

  PcgOptions pcg;
  /// Linear flux f(s) = s instead of Buckley-Leverett (accuracy studies).
  bool linear_flux = false;

  /// Throws ConfigError (or ShapeError for a bad grid).
  void validate() const;
  double effective_pressure_step() const;
  std::vector<double> effective_snapshot_days() const;
  double cfl() const { return scheme == Scheme::nt ? cfl_nt : cfl_kt; }
};

/// Water volumes since the start of the run. Saturation is water volume
/// per unit pore volume, so the current water volume is the saturation
/// integral.
struct MassLedger
{
  double initial_water = 0.0;
  double injected = 0.0;
  double produced = 0.0;

  /// |W - W0 - (injected - produced)| / max(W, W0).
  double relative_imbalance(double current_water) const;
};

struct SimulationState
{
  double time_days = 0.0;
  ScalarField saturation;
  ScalarField pressure;
  FaceVelocityField velocity;
  long pressure_solves = 0;
  long micro_steps = 0;
  long velocity_version = -1; // pressure_solves value that produced `velocity`
  MassLedger ledger;
};

/// Pressure problem with everything but the saturation fixed, the matching
/// transport closure, and the initial state.
struct Scenario
{
  ScenarioConfig config;
  PressureProblem pressure;
  TransportBoundary transport_boundary;
  FluxFunction flux;
  SimulationState initial;
  double total_rate = 0.0; // injected volume per solver time unit
};

/// Permeability of the scenario grid according to the config.
ScalarField resolve_permeability(const ScenarioConfig& config);

/// Injection rate in volume per solver time unit.
double injection_rate(const ScenarioConfig& config);

Scenario build_scenario(const ScenarioConfig& config);

struct PeriodStats
{
  int pcg_iterations = 0;
  double pcg_residual = 0.0;
  long micro_steps = 0;
  double min_saturation = 0.0;
  double max_saturation = 0.0;
};

using StepObserver = std::function<void(const SimulationState&)>;

/// One pressure solve at the current saturation followed by transport
/// micro-steps tiling period_days exactly. `on_step` sees the state after
/// every micro-step. Throws SolverError, TimeStepError or BlowUpError with
/// the time and step count in the message.
PeriodStats advance_pressure_period(const Scenario& scenario, SimulationState& state,
                                    double period_days, const StepObserver& on_step = {});

struct Snapshot
{
  double requested_days = 0.0;
  double time_days = 0.0;
  ScalarField saturation;
  double mass_imbalance = 0.0;
};

struct HistoryEntry
{
  double time_days = 0.0;
  double min_saturation = 0.0;
  double max_saturation = 0.0;
};

struct RunReport
{
  double wall_seconds = 0.0;
  long pressure_solves = 0;
  long micro_steps = 0;
  long pcg_iterations = 0;
  double max_pcg_residual = 0.0;
  double max_mass_imbalance = 0.0;
  double min_saturation = 0.0;
  double max_saturation = 0.0;
  std::vector<HistoryEntry> history; // one entry per pressure period
};

struct RunResult
{
  std::vector<Snapshot> snapshots;
  SimulationState final_state;
  RunReport report;
};

/// Runs the scenario to end_days. Each snapshot is taken at the first
/// micro-step boundary at or after its requested time.
RunResult run(const ScenarioConfig& config);
RunResult run(const Scenario& scenario);

} // namespace ctflow
