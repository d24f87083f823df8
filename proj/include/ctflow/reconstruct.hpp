#pragma once

#include "ctflow/flux.hpp"
#include "ctflow/grid.hpp"

#include <span>
#include <vector>

namespace ctflow {

/// Whether each axis wraps around. Bounded axes get zero slopes in the
/// first and last cell along that axis.
struct Topology
{
  bool periodic_x = false;
  bool periodic_y = false;
};

inline constexpr double kDefaultTheta = 1.5;

/// Undivided limited slopes of a cell field: the reconstruction in cell
/// (j, k) is S + sx (x - x_j) / dx + sy (y - y_k) / dy.
struct SlopeField
{
  int nx = 0;
  int ny = 0;
  std::vector<double> sx;
  std::vector<double> sy;

  double x(int j, int k) const { return sx[std::size_t(k) * nx + j]; }
  double y(int j, int k) const { return sy[std::size_t(k) * nx + j]; }
};

/// Smallest-magnitude argument when all three share a sign, else zero.
double minmod3(double a, double b, double c);

/// Throws ConfigError unless 1 <= theta <= 2.
void check_theta(double theta);

/// MinMod-theta slopes of an nx x ny row-major array:
///     s = minmod3(theta * d_minus, (d_minus + d_plus) / 2, theta * d_plus)
SlopeField limited_slopes(int nx, int ny, std::span<const double> values, double theta,
                          Topology topology = {});

SlopeField limited_slopes(const ScalarField& field, double theta, Topology topology = {});

/// Limited slopes of the pointwise flux values f(S_jk).
SlopeField flux_slopes(const ScalarField& sat, const FluxFunction& flux, double theta,
                       Topology topology = {});

} // namespace ctflow
