#pragma once

#include "ctflow/transport.hpp"

#include <vector>

namespace ctflow {

/// Cell averages on the grid staggered by half a cell in both directions.
///
/// Vertex (m, n) sits at (m dx, n dy) and carries the average over the
/// dx x dy cell centred there, intersected with the domain. On a bounded
/// axis there are n+1 vertices and the two end vertices own half cells; on
/// a periodic axis there are n vertices and all cells are whole. The area
/// fraction of a vertex is therefore 1, 1/2 (edge) or 1/4 (corner).
class StaggeredField
{
public:
  StaggeredField(const StructuredGrid& grid, Topology topology, double fill = 0.0);

  const StructuredGrid& grid() const { return grid_; }
  Topology topology() const { return topology_; }
  int mx() const { return mx_; }
  int my() const { return my_; }

  double& operator()(int m, int n) { return values_[std::size_t(n) * mx_ + m]; }
  double operator()(int m, int n) const { return values_[std::size_t(n) * mx_ + m]; }
  std::span<const double> values() const { return values_; }

  double area_fraction(int m, int n) const;
  /// Sum of value times covered area.
  double integral() const;

private:
  StructuredGrid grid_;
  Topology topology_;
  int mx_;
  int my_;
  std::vector<double> values_;
};

/// Half-step predictor at cell centres:
///     s = S - dt/(2 dx) vx_c fx - dt/(2 dy) vy_c fy
/// where fx, fy are limited undivided slopes of f(S) and vx_c, vy_c the
/// cell-centre velocity components.
ScalarField predictor_midvalues(const ScalarField& sat, const SlopeField& flux_slopes,
                                const TransportProblem& p, double dt);

/// Exact average of the piecewise-linear reconstruction over each
/// staggered cell.
StaggeredField staggered_average(const ScalarField& sat, const SlopeField& slopes,
                                 Topology topology);

/// Staggered averages at t + dt: the current averages minus the
/// midpoint-in-time fluxes through the staggered cell boundary (lines
/// through the four surrounding cell centres, plus domain-boundary pieces),
/// plus one quarter of each neighbouring cell's well water rate. Water
/// entering or leaving through edges and wells is added to `exchange`.
StaggeredField staggered_corrector(const StaggeredField& now, const ScalarField& midvalues,
                                   const TransportProblem& p, double dt,
                                   WaterExchange* exchange = nullptr);

/// Projects staggered averages back onto the original cells using limited
/// slopes of the staggered data.
ScalarField reaverage_to_grid(const StaggeredField& z, double theta);

/// Largest directional Courant number an NT step accepts.
inline constexpr double kNtCourantLimit = 0.5;

/// One Nessyahu-Tadmor step of length dt followed by re-averaging.
/// Throws TimeStepError when max(dt a^x/dx, dt a^y/dy) exceeds
/// kNtCourantLimit, BlowUpError when a non-finite value appears.
TransportStepResult nt_step(const ScalarField& sat, const TransportProblem& p, double dt);

} // namespace ctflow
