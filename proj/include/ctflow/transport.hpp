#pragma once

#include "ctflow/flux.hpp"
#include "ctflow/grid.hpp"
#include "ctflow/pressure.hpp"
#include "ctflow/reconstruct.hpp"

#include <vector>

namespace ctflow {

/// Saturation closure on one domain edge.
///
/// Boundary fluxes are built from a ghost state: the injection saturation
/// on inflow edges, the adjacent interior value on outflow edges
/// (zero-gradient), and nothing on no-flow edges. The flux through a face
/// is the normal velocity times f of the upwind state.
enum class EdgeKind { no_flow, inflow, outflow, periodic };

struct TransportBoundary
{
  EdgeKind left = EdgeKind::no_flow;
  EdgeKind right = EdgeKind::no_flow;
  EdgeKind bottom = EdgeKind::no_flow;
  EdgeKind top = EdgeKind::no_flow;
  double injection_saturation = 0.85;

  /// Periodic edges must come in opposite pairs; throws ConfigError.
  void validate() const;
  Topology topology() const;
};

/// Everything a convection step needs besides the saturation itself. The
/// velocity is held fixed over the step. On a periodic axis the last face
/// index (nx or ny) is an alias of face 0 and is never read.
struct TransportProblem
{
  FaceVelocityField velocity;
  FluxFunction flux;
  TransportBoundary boundary;
  std::vector<WellSource> wells;
  double theta = kDefaultTheta;
};

/// Water volume exchanged with the outside over a step.
struct WaterExchange
{
  double injected = 0.0;
  double produced = 0.0;

  WaterExchange& operator+=(const WaterExchange& o)
  {
    injected += o.injected;
    produced += o.produced;
    return *this;
  }
};

struct TransportStepResult
{
  ScalarField saturation;
  WaterExchange exchange;
};

/// x-face velocity honouring periodic aliasing of face nx onto face 0.
double face_vx(const TransportProblem& p, int j, int k);
double face_vy(const TransportProblem& p, int j, int k);

/// Outward water flux per unit face length through a boundary face, given
/// the interior state next to it. `low_side` marks left/bottom edges.
double boundary_water_flux(const TransportProblem& p, EdgeKind kind, double normal_velocity,
                           bool low_side, double interior_state);

/// Water rate of the wells in a cell given the cell state: injectors carry
/// f(s_inj), producers f(state).
double well_water_rate(const TransportProblem& p, double rate, double state);

/// Largest directional wave rates max a^x / dx and max a^y / dy, with
/// a = |v| max |f'| over the interval spanned by the two cell averages and
/// the reconstructed interface values at each face.
struct WaveRates
{
  double x = 0.0;
  double y = 0.0;
};
WaveRates max_wave_rates(const ScalarField& sat, const TransportProblem& p);

/// Courant-limited convection step cfl / (max a^x/dx + max a^y/dy), capped
/// at dt_max. Returns dt_max when no wave moves.
double cfl_dt(const ScalarField& sat, const TransportProblem& p, double cfl, double dt_max);

/// Checks that the problem fits the saturation grid. Throws ShapeError or
/// ConfigError.
void check_transport_problem(const ScalarField& sat, const TransportProblem& p);

} // namespace ctflow
