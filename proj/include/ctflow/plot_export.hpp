#pragma once

#include "ctflow/grid.hpp"

#include <array>
#include <iosfwd>
#include <vector>

namespace ctflow {

struct SurfacePoint
{
  double x = 0.0;
  double y = 0.0;
  double value = 0.0;
};

/// One (x, y, value) triplet per cell centre, in storage order.
std::vector<SurfacePoint> surface_points(const ScalarField& field);

struct Polyline
{
  double level = 0.0;
  bool closed = false;
  std::vector<std::array<double, 2>> points;
};

/// Level curves of the bilinear interpolant through cell-centre values,
/// by marching squares. Saddle squares are resolved with the mean of the
/// four corners. Segments sharing a lattice edge are joined into polylines;
/// a closed loop repeats its first point at the end.
std::vector<Polyline> contour_lines(const ScalarField& field, double level);

void write_surface(std::ostream& out, const ScalarField& field);

/// Throws ConfigError for an empty level list.
void write_contours(std::ostream& out, const ScalarField& field, const std::vector<double>& levels);

} // namespace ctflow
