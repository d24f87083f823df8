#pragma once

// Small builders shared by unit and acceptance tests.

#include "ctflow/driver.hpp"
#include "ctflow/snapshot_io.hpp"
#include "ctflow/transport.hpp"

#include <cmath>
#include <filesystem>
#include <functional>
#include <string>

namespace testing_support {

using namespace ctflow;

inline TransportBoundary closed_box()
{
  return {};
}

inline TransportBoundary periodic_x()
{
  TransportBoundary b;
  b.left = b.right = EdgeKind::periodic;
  return b;
}

inline TransportBoundary slab_boundary()
{
  TransportBoundary b;
  b.left = EdgeKind::inflow;
  b.right = EdgeKind::outflow;
  return b;
}

inline FaceVelocityField uniform_velocity(const StructuredGrid& g, double ux, double uy)
{
  FaceVelocityField v(g);
  for (auto& x : v.vx_values())
    x = ux;
  for (auto& y : v.vy_values())
    y = uy;
  return v;
}

/// Cell averages of a function of x on a one-row grid of n cells over [0, 1].
inline ScalarField averages_1d(int n, const std::function<double(double, double)>& integral_ab)
{
  const StructuredGrid g(n, 1, 1.0, 1.0);
  ScalarField s(g);
  const double dx = 1.0 / n;
  for (int j = 0; j < n; ++j)
    s(j, 0) = integral_ab(j * dx, (j + 1) * dx) / dx;
  return s;
}

/// Integral of 0.5 + 0.25 sin(2 pi (x - shift)) over [a, b].
inline double smooth_profile_integral(double a, double b, double shift)
{
  const double w = 2.0 * M_PI;
  return 0.5 * (b - a) - 0.25 / w * (std::cos(w * (b - shift)) - std::cos(w * (a - shift)));
}

inline double l1_error(const ScalarField& a, const ScalarField& b)
{
  double e = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    e += std::abs(a[i] - b[i]);
  return e * a.grid().cell_area();
}

inline std::string fixture_path(const std::string& name)
{
  return std::string(CTFLOW_FIXTURE_DIR) + "/" + name;
}

/// Pinned 64x16 permeability raster for CV in {0.5, 1.2, 2.2}.
inline ScalarField load_fixture(const std::string& cv_tag)
{
  return read_snapshot(std::filesystem::path(fixture_path("permeability_cv" + cv_tag + ".snap")))
      .field;
}

} // namespace testing_support
