#pragma once

#include "ctflow/errors.hpp"
#include "ctflow/transport.hpp"

#include <vector>

namespace ctflow {

/// Reconstructed one-sided values at every face. x-faces use the grid's
/// x-face layout ((nx+1) x ny), y-faces the y-face layout (nx x (ny+1)).
/// `minus` is the value from the low side, `plus` from the high side.
/// Boundary faces hold the interior value on the inside and the ghost value
/// on the outside; on periodic axes face nx (ny) repeats face 0.
struct InterfaceStates
{
  StructuredGrid grid;
  std::vector<double> x_minus, x_plus;
  std::vector<double> y_minus, y_plus;
};

InterfaceStates interface_states(const ScalarField& sat, const SlopeField& slopes,
                                 const TransportProblem& p);

/// a = |u| max |f'| over the interval spanned by the two face states.
double local_speed(const FluxFunction& flux, double u, double s_minus, double s_plus);

/// Central-upwind numerical flux per unit face length:
///     H = u (f(s+) + f(s-)) / 2 - a (s+ - s-) / 2
double kt_flux(const FluxFunction& flux, double u, double s_minus, double s_plus, double a);

double local_speed_x(const InterfaceStates& st, const TransportProblem& p, int j, int k);
double local_speed_y(const InterfaceStates& st, const TransportProblem& p, int j, int k);

/// Numerical flux through x-face (j, k) / y-face (j, k). Interior faces use
/// kt_flux; boundary faces use the edge closure of boundary_water_flux,
/// signed in the +x / +y direction.
double kt_flux_x(const InterfaceStates& st, const TransportProblem& p, int j, int k);
double kt_flux_y(const InterfaceStates& st, const TransportProblem& p, int j, int k);

/// dS/dt of the semi-discrete scheme plus the instantaneous water rates
/// crossing the domain boundary and wells.
struct SemiDiscreteRate
{
  ScalarField dsdt;
  double injection_rate = 0.0;
  double production_rate = 0.0;
};

SemiDiscreteRate semi_discrete_rhs(const ScalarField& sat, const TransportProblem& p);

/// Three-stage strong-stability-preserving Runge-Kutta step for
/// du/dt = rhs(u):
///     u1 = u + dt L(u)
///     u2 = 3/4 u + 1/4 (u1 + dt L(u1))
///     u' = 1/3 u + 2/3 (u2 + dt L(u2))
/// Throws BlowUpError if a stage goes non-finite.
template <class Rhs>
ScalarField ssp_rk3_step(const ScalarField& u, Rhs&& rhs, double dt)
{
  auto stage = [&](const ScalarField& base, double wb, const ScalarField& s) {
    const ScalarField l = rhs(s);
    ScalarField out(s.grid());
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] = wb * base[i] + (1.0 - wb) * (s[i] + dt * l[i]);
    if (!out.all_finite())
      throw BlowUpError("non-finite value in Runge-Kutta stage");
    return out;
  };
  const ScalarField u1 = stage(u, 0.0, u);
  const ScalarField u2 = stage(u, 0.75, u1);
  return stage(u, 1.0 / 3.0, u2);
}

/// One Kurganov-Tadmor step: the semi-discrete scheme advanced by
/// ssp_rk3_step. The exchanged water is the stage-weighted boundary rate
/// (1/6, 1/6, 2/3) times dt, matching what the update actually removes.
TransportStepResult kt_step(const ScalarField& sat, const TransportProblem& p, double dt);

} // namespace ctflow
