#include "ctflow/grid.hpp"

#include "ctflow/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ctflow {

StructuredGrid::StructuredGrid(int nx, int ny, double lx, double ly)
  : nx_(nx), ny_(ny), lx_(lx), ly_(ly)
{
  if (nx < 1 || ny < 1)
    throw ShapeError("grid needs at least one cell per direction, got " +
                     std::to_string(nx) + "x" + std::to_string(ny));
  if (!(lx > 0.0) || !(ly > 0.0) || !std::isfinite(lx) || !std::isfinite(ly))
    throw ShapeError("grid extents must be positive and finite");
}

ScalarField::ScalarField(const StructuredGrid& grid, double fill)
  : grid_(grid), values_(grid.cell_count(), fill)
{}

ScalarField::ScalarField(const StructuredGrid& grid, std::vector<double> values)
  : grid_(grid), values_(std::move(values))
{
  if (values_.size() != grid_.cell_count())
    throw ShapeError("field has " + std::to_string(values_.size()) + " values, grid has " +
                     std::to_string(grid_.cell_count()) + " cells");
}

double ScalarField::integral() const
{
  double sum = 0.0;
  for (double v : values_)
    sum += v;
  return sum * grid_.cell_area();
}

double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }

double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }

bool ScalarField::all_finite() const
{
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

FaceVelocityField::FaceVelocityField(const StructuredGrid& grid)
  : grid_(grid), vx_(grid.x_face_count(), 0.0), vy_(grid.y_face_count(), 0.0)
{}

double FaceVelocityField::max_abs() const
{
  double m = 0.0;
  for (double v : vx_)
    m = std::max(m, std::abs(v));
  for (double v : vy_)
    m = std::max(m, std::abs(v));
  return m;
}

ScalarField net_outflow(const FaceVelocityField& velocity)
{
  const auto& g = velocity.grid();
  ScalarField out(g);
  for (int k = 0; k < g.ny(); ++k)
    for (int j = 0; j < g.nx(); ++j)
      out(j, k) = (velocity.vx(j + 1, k) - velocity.vx(j, k)) * g.dy() +
                  (velocity.vy(j, k + 1) - velocity.vy(j, k)) * g.dx();
  return out;
}

std::array<CellIndex, 4> staggered_neighbors(const StructuredGrid& grid, int j, int k)
{
  if (j < 0 || k < 0 || j > grid.nx() - 2 || k > grid.ny() - 2)
    throw IndexError("staggered cell (" + std::to_string(j) + "+1/2, " + std::to_string(k) +
                     "+1/2) is outside the interior staggered grid");
  return {CellIndex{j, k}, CellIndex{j + 1, k}, CellIndex{j, k + 1}, CellIndex{j + 1, k + 1}};
}

ScalarField restrict_field(const ScalarField& fine, int factor)
{
  const auto& g = fine.grid();
  if (factor < 1)
    throw ShapeError("restriction factor must be positive");
  if (g.nx() % factor != 0 || g.ny() % factor != 0)
    throw ShapeError("grid " + std::to_string(g.nx()) + "x" + std::to_string(g.ny()) +
                     " is not divisible by restriction factor " + std::to_string(factor));
  StructuredGrid coarse_grid(g.nx() / factor, g.ny() / factor, g.lx(), g.ly());
  ScalarField coarse(coarse_grid);
  const double inv = 1.0 / (double(factor) * factor);
  for (int k = 0; k < coarse_grid.ny(); ++k)
    for (int j = 0; j < coarse_grid.nx(); ++j) {
      double sum = 0.0;
      for (int kk = 0; kk < factor; ++kk)
        for (int jj = 0; jj < factor; ++jj)
          sum += fine(j * factor + jj, k * factor + kk);
      coarse(j, k) = sum * inv;
    }
  return coarse;
}

ScalarField prolong_field(const ScalarField& coarse, int factor)
{
  if (factor < 1)
    throw ShapeError("prolongation factor must be positive");
  const auto& g = coarse.grid();
  StructuredGrid fine_grid(g.nx() * factor, g.ny() * factor, g.lx(), g.ly());
  ScalarField fine(fine_grid);
  for (int k = 0; k < fine_grid.ny(); ++k)
    for (int j = 0; j < fine_grid.nx(); ++j)
      fine(j, k) = coarse(j / factor, k / factor);
  return fine;
}

} // namespace ctflow
