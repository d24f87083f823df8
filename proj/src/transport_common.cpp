#include "ctflow/transport.hpp"

#include "ctflow/errors.hpp"

#include <algorithm>
#include <cmath>

namespace ctflow {

void TransportBoundary::validate() const
{
  if ((left == EdgeKind::periodic) != (right == EdgeKind::periodic) ||
      (bottom == EdgeKind::periodic) != (top == EdgeKind::periodic))
    throw ConfigError("periodic edges must be paired with the opposite edge");
  if (!std::isfinite(injection_saturation))
    throw ConfigError("injection saturation must be finite");
}

Topology TransportBoundary::topology() const
{
  return {left == EdgeKind::periodic, bottom == EdgeKind::periodic};
}

double face_vx(const TransportProblem& p, int j, int k)
{
  if (j == p.velocity.grid().nx() && p.boundary.left == EdgeKind::periodic)
    j = 0;
  return p.velocity.vx(j, k);
}

double face_vy(const TransportProblem& p, int j, int k)
{
  if (k == p.velocity.grid().ny() && p.boundary.bottom == EdgeKind::periodic)
    k = 0;
  return p.velocity.vy(j, k);
}

double boundary_water_flux(const TransportProblem& p, EdgeKind kind, double normal_velocity,
                           bool low_side, double interior_state)
{
  if (kind == EdgeKind::no_flow || kind == EdgeKind::periodic)
    return 0.0;
  const double outward = low_side ? -normal_velocity : normal_velocity;
  if (kind == EdgeKind::inflow && outward < 0.0)
    return outward * p.flux.value(p.boundary.injection_saturation);
  return outward * p.flux.value(interior_state);
}

double well_water_rate(const TransportProblem& p, double rate, double state)
{
  if (rate > 0.0)
    return rate * p.flux.value(p.boundary.injection_saturation);
  return rate * p.flux.value(state);
}

void check_transport_problem(const ScalarField& sat, const TransportProblem& p)
{
  if (!(sat.grid() == p.velocity.grid()))
    throw ShapeError("saturation and velocity grids differ");
  p.boundary.validate();
  check_theta(p.theta);
  for (const auto& w : p.wells)
    if (!sat.grid().contains(w.cell.j, w.cell.k))
      throw IndexError("well cell outside the grid");
}

namespace {

double interval_speed(const FluxFunction& f, double u, std::initializer_list<double> pts)
{
  const auto [lo, hi] = std::minmax(pts);
  return std::abs(u) * f.max_abs_derivative(lo, hi);
}

double ghost_state(const TransportProblem& p, EdgeKind kind, double interior)
{
  return kind == EdgeKind::inflow ? p.boundary.injection_saturation : interior;
}

} // namespace

WaveRates max_wave_rates(const ScalarField& sat, const TransportProblem& p)
{
  const auto& g = sat.grid();
  const int nx = g.nx(), ny = g.ny();
  const Topology topo = p.boundary.topology();
  const SlopeField s = limited_slopes(sat, p.theta, topo);
  double ax = 0.0, ay = 0.0;

  for (int k = 0; k < ny; ++k) {
    for (int j = 0; j <= nx; ++j) {
      const double u = face_vx(p, j, k);
      if (u == 0.0)
        continue;
      double a;
      if (topo.periodic_x || (j > 0 && j < nx)) {
        if (topo.periodic_x && j == nx)
          continue;
        const int jl = (j + nx - 1) % nx, jr = j % nx;
        const double sl = sat(jl, k), sr = sat(jr, k);
        a = interval_speed(p.flux, u, {sl, sr, sl + 0.5 * s.x(jl, k), sr - 0.5 * s.x(jr, k)});
      } else {
        const int jc = j == 0 ? 0 : nx - 1;
        const EdgeKind kind = j == 0 ? p.boundary.left : p.boundary.right;
        const double si = sat(jc, k);
        a = interval_speed(p.flux, u, {si, ghost_state(p, kind, si)});
      }
      ax = std::max(ax, a);
    }
  }
  for (int k = 0; k <= ny; ++k) {
    if (topo.periodic_y && k == ny)
      continue;
    for (int j = 0; j < nx; ++j) {
      const double u = face_vy(p, j, k);
      if (u == 0.0)
        continue;
      double a;
      if (topo.periodic_y || (k > 0 && k < ny)) {
        const int kl = (k + ny - 1) % ny, kr = k % ny;
        const double sl = sat(j, kl), sr = sat(j, kr);
        a = interval_speed(p.flux, u, {sl, sr, sl + 0.5 * s.y(j, kl), sr - 0.5 * s.y(j, kr)});
      } else {
        const int kc = k == 0 ? 0 : ny - 1;
        const EdgeKind kind = k == 0 ? p.boundary.bottom : p.boundary.top;
        const double si = sat(j, kc);
        a = interval_speed(p.flux, u, {si, ghost_state(p, kind, si)});
      }
      ay = std::max(ay, a);
    }
  }
  return {ax / g.dx(), ay / g.dy()};
}

double cfl_dt(const ScalarField& sat, const TransportProblem& p, double cfl, double dt_max)
{
  if (!(cfl > 0.0))
    throw ConfigError("CFL number must be positive");
  if (!(dt_max > 0.0))
    throw ConfigError("time-step cap must be positive");
  const WaveRates r = max_wave_rates(sat, p);
  const double rate = r.x + r.y;
  if (rate <= 0.0)
    return dt_max;
  return std::min(dt_max, cfl / rate);
}

} // namespace ctflow
