#include "ctflow/transport_kt.hpp"

#include <algorithm>
#include <cmath>

namespace ctflow {

namespace {

double ghost(const TransportProblem& p, EdgeKind kind, double interior)
{
  return kind == EdgeKind::inflow ? p.boundary.injection_saturation : interior;
}

} // namespace

InterfaceStates interface_states(const ScalarField& sat, const SlopeField& s,
                                 const TransportProblem& p)
{
  const auto& g = sat.grid();
  const int nx = g.nx(), ny = g.ny();
  const Topology topo = p.boundary.topology();
  InterfaceStates st{g, std::vector<double>(g.x_face_count()), std::vector<double>(g.x_face_count()),
                     std::vector<double>(g.y_face_count()), std::vector<double>(g.y_face_count())};

  for (int k = 0; k < ny; ++k)
    for (int j = 0; j <= nx; ++j) {
      const std::size_t f = g.x_face(j, k);
      if (topo.periodic_x || (j > 0 && j < nx)) {
        const int jl = (j + nx - 1) % nx, jr = j % nx;
        st.x_minus[f] = sat(jl, k) + 0.5 * s.x(jl, k);
        st.x_plus[f] = sat(jr, k) - 0.5 * s.x(jr, k);
      } else if (j == 0) {
        st.x_plus[f] = sat(0, k) - 0.5 * s.x(0, k);
        st.x_minus[f] = ghost(p, p.boundary.left, st.x_plus[f]);
      } else {
        st.x_minus[f] = sat(nx - 1, k) + 0.5 * s.x(nx - 1, k);
        st.x_plus[f] = ghost(p, p.boundary.right, st.x_minus[f]);
      }
    }
  for (int k = 0; k <= ny; ++k)
    for (int j = 0; j < nx; ++j) {
      const std::size_t f = g.y_face(j, k);
      if (topo.periodic_y || (k > 0 && k < ny)) {
        const int kl = (k + ny - 1) % ny, kr = k % ny;
        st.y_minus[f] = sat(j, kl) + 0.5 * s.y(j, kl);
        st.y_plus[f] = sat(j, kr) - 0.5 * s.y(j, kr);
      } else if (k == 0) {
        st.y_plus[f] = sat(j, 0) - 0.5 * s.y(j, 0);
        st.y_minus[f] = ghost(p, p.boundary.bottom, st.y_plus[f]);
      } else {
        st.y_minus[f] = sat(j, ny - 1) + 0.5 * s.y(j, ny - 1);
        st.y_plus[f] = ghost(p, p.boundary.top, st.y_minus[f]);
      }
    }
  return st;
}

double local_speed(const FluxFunction& flux, double u, double s_minus, double s_plus)
{
  return std::abs(u) * flux.max_abs_derivative(s_minus, s_plus);
}

double kt_flux(const FluxFunction& flux, double u, double s_minus, double s_plus, double a)
{
  return 0.5 * u * (flux.value(s_plus) + flux.value(s_minus)) - 0.5 * a * (s_plus - s_minus);
}

double local_speed_x(const InterfaceStates& st, const TransportProblem& p, int j, int k)
{
  const std::size_t f = st.grid.x_face(j, k);
  return local_speed(p.flux, face_vx(p, j, k), st.x_minus[f], st.x_plus[f]);
}

double local_speed_y(const InterfaceStates& st, const TransportProblem& p, int j, int k)
{
  const std::size_t f = st.grid.y_face(j, k);
  return local_speed(p.flux, face_vy(p, j, k), st.y_minus[f], st.y_plus[f]);
}

double kt_flux_x(const InterfaceStates& st, const TransportProblem& p, int j, int k)
{
  const int nx = st.grid.nx();
  const std::size_t f = st.grid.x_face(j, k);
  const double u = face_vx(p, j, k);
  if (p.boundary.left == EdgeKind::periodic || (j > 0 && j < nx))
    return kt_flux(p.flux, u, st.x_minus[f], st.x_plus[f], local_speed_x(st, p, j, k));
  if (j == 0)
    return -boundary_water_flux(p, p.boundary.left, u, true, st.x_plus[f]);
  return boundary_water_flux(p, p.boundary.right, u, false, st.x_minus[f]);
}

double kt_flux_y(const InterfaceStates& st, const TransportProblem& p, int j, int k)
{
  const int ny = st.grid.ny();
  const std::size_t f = st.grid.y_face(j, k);
  const double u = face_vy(p, j, k);
  if (p.boundary.bottom == EdgeKind::periodic || (k > 0 && k < ny))
    return kt_flux(p.flux, u, st.y_minus[f], st.y_plus[f], local_speed_y(st, p, j, k));
  if (k == 0)
    return -boundary_water_flux(p, p.boundary.bottom, u, true, st.y_plus[f]);
  return boundary_water_flux(p, p.boundary.top, u, false, st.y_minus[f]);
}

SemiDiscreteRate semi_discrete_rhs(const ScalarField& sat, const TransportProblem& p)
{
  const auto& g = sat.grid();
  const int nx = g.nx(), ny = g.ny();
  const double dx = g.dx(), dy = g.dy();
  const Topology topo = p.boundary.topology();
  const SlopeField s = limited_slopes(sat, p.theta, topo);
  const InterfaceStates st = interface_states(sat, s, p);

  std::vector<double> hx(g.x_face_count()), hy(g.y_face_count());
  for (int k = 0; k < ny; ++k) {
    for (int j = 0; j < nx; ++j)
      hx[g.x_face(j, k)] = kt_flux_x(st, p, j, k);
    hx[g.x_face(nx, k)] = topo.periodic_x ? hx[g.x_face(0, k)] : kt_flux_x(st, p, nx, k);
  }
  for (int j = 0; j < nx; ++j) {
    for (int k = 0; k < ny; ++k)
      hy[g.y_face(j, k)] = kt_flux_y(st, p, j, k);
    hy[g.y_face(j, ny)] = topo.periodic_y ? hy[g.y_face(j, 0)] : kt_flux_y(st, p, j, ny);
  }

  SemiDiscreteRate r{ScalarField(g), 0.0, 0.0};
  for (int k = 0; k < ny; ++k)
    for (int j = 0; j < nx; ++j)
      r.dsdt(j, k) = -(hx[g.x_face(j + 1, k)] - hx[g.x_face(j, k)]) / dx -
                     (hy[g.y_face(j, k + 1)] - hy[g.y_face(j, k)]) / dy;

  auto tally = [&r](double outward) {
    if (outward > 0.0)
      r.production_rate += outward;
    else
      r.injection_rate -= outward;
  };
  if (!topo.periodic_x)
    for (int k = 0; k < ny; ++k) {
      tally(-hx[g.x_face(0, k)] * dy);
      tally(hx[g.x_face(nx, k)] * dy);
    }
  if (!topo.periodic_y)
    for (int j = 0; j < nx; ++j) {
      tally(-hy[g.y_face(j, 0)] * dx);
      tally(hy[g.y_face(j, ny)] * dx);
    }
  for (const auto& w : p.wells) {
    const double q = well_water_rate(p, w.rate, sat(w.cell.j, w.cell.k));
    r.dsdt(w.cell.j, w.cell.k) += q / (dx * dy);
    tally(-q);
  }
  return r;
}

TransportStepResult kt_step(const ScalarField& sat, const TransportProblem& p, double dt)
{
  check_transport_problem(sat, p);
  if (!(dt > 0.0))
    throw TimeStepError("KT step length must be positive");
  std::vector<SemiDiscreteRate> stages;
  stages.reserve(3);
  auto rhs = [&](const ScalarField& u) {
    stages.push_back(semi_discrete_rhs(u, p));
    return stages.back().dsdt;
  };
  ScalarField out = ssp_rk3_step(sat, rhs, dt);
  const double w[3] = {1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0};
  WaterExchange ex;
  for (int i = 0; i < 3; ++i) {
    ex.injected += w[i] * dt * stages[i].injection_rate;
    ex.produced += w[i] * dt * stages[i].production_rate;
  }
  return {std::move(out), ex};
}

} // namespace ctflow
