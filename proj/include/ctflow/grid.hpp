#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace ctflow {

struct CellIndex
{
  int j = 0;
  int k = 0;

  friend bool operator==(const CellIndex&, const CellIndex&) = default;
};

/// Uniform rectangular grid on [0, lx] x [0, ly] with nx x ny cells.
///
/// Cell (j, k) covers [j dx, (j+1) dx] x [k dy, (k+1) dy]; the origin is the
/// bottom-left corner. Cell storage is row-major with k outer and j inner,
/// so the flat index of (j, k) is k * nx + j.
///
/// x-faces are indexed (j, k) with 0 <= j <= nx: face (j, k) is the left
/// face of cell (j, k). y-faces are indexed (j, k) with 0 <= k <= ny: face
/// (j, k) is the bottom face of cell (j, k).
class StructuredGrid
{
public:
  StructuredGrid(int nx, int ny, double lx, double ly);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double lx() const { return lx_; }
  double ly() const { return ly_; }
  double dx() const { return lx_ / nx_; }
  double dy() const { return ly_ / ny_; }
  double cell_area() const { return dx() * dy(); }

  std::size_t cell_count() const { return std::size_t(nx_) * ny_; }
  std::size_t x_face_count() const { return std::size_t(nx_ + 1) * ny_; }
  std::size_t y_face_count() const { return std::size_t(nx_) * (ny_ + 1); }

  std::size_t index(int j, int k) const { return std::size_t(k) * nx_ + j; }
  std::size_t index(CellIndex c) const { return index(c.j, c.k); }
  std::size_t x_face(int j, int k) const { return std::size_t(k) * (nx_ + 1) + j; }
  std::size_t y_face(int j, int k) const { return std::size_t(k) * nx_ + j; }

  bool contains(int j, int k) const { return j >= 0 && j < nx_ && k >= 0 && k < ny_; }

  double x_center(int j) const { return (j + 0.5) * dx(); }
  double y_center(int k) const { return (k + 0.5) * dy(); }

  friend bool operator==(const StructuredGrid&, const StructuredGrid&) = default;

private:
  int nx_;
  int ny_;
  double lx_;
  double ly_;
};

/// One value per cell, row-major (k outer, j inner).
class ScalarField
{
public:
  explicit ScalarField(const StructuredGrid& grid, double fill = 0.0);
  ScalarField(const StructuredGrid& grid, std::vector<double> values);

  const StructuredGrid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }

  double& operator()(int j, int k) { return values_[grid_.index(j, k)]; }
  double operator()(int j, int k) const { return values_[grid_.index(j, k)]; }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  /// Sum of value times cell area.
  double integral() const;
  double min() const;
  double max() const;
  bool all_finite() const;

  friend bool operator==(const ScalarField&, const ScalarField&) = default;

private:
  StructuredGrid grid_;
  std::vector<double> values_;
};

/// Normal velocities on cell faces (lowest-order Raviart-Thomas degrees of
/// freedom). vx is positive in +x, vy positive in +y; both are volumetric
/// flux per unit face length.
class FaceVelocityField
{
public:
  explicit FaceVelocityField(const StructuredGrid& grid);

  const StructuredGrid& grid() const { return grid_; }

  double& vx(int j, int k) { return vx_[grid_.x_face(j, k)]; }
  double vx(int j, int k) const { return vx_[grid_.x_face(j, k)]; }
  double& vy(int j, int k) { return vy_[grid_.y_face(j, k)]; }
  double vy(int j, int k) const { return vy_[grid_.y_face(j, k)]; }

  std::span<double> vx_values() { return vx_; }
  std::span<const double> vx_values() const { return vx_; }
  std::span<double> vy_values() { return vy_; }
  std::span<const double> vy_values() const { return vy_; }

  /// Cell-centred components: mean of the two bounding face values.
  double center_vx(int j, int k) const { return 0.5 * (vx(j, k) + vx(j + 1, k)); }
  double center_vy(int j, int k) const { return 0.5 * (vy(j, k) + vy(j, k + 1)); }

  double max_abs() const;

  friend bool operator==(const FaceVelocityField&, const FaceVelocityField&) = default;

private:
  StructuredGrid grid_;
  std::vector<double> vx_;
  std::vector<double> vy_;
};

/// Net volumetric outflow of every cell (sum over faces of velocity times
/// face length, outward positive).
ScalarField net_outflow(const FaceVelocityField& velocity);

/// The four cells overlapping the staggered cell centred at the vertex
/// (x_{j+1/2}, y_{k+1/2}), in the order (j,k), (j+1,k), (j,k+1), (j+1,k+1).
/// Requires 0 <= j <= nx-2 and 0 <= k <= ny-2; throws IndexError otherwise.
std::array<CellIndex, 4> staggered_neighbors(const StructuredGrid& grid, int j, int k);

/// Block mean over factor x factor blocks. Throws ShapeError when the grid
/// dimensions are not divisible by factor.
ScalarField restrict_field(const ScalarField& fine, int factor);

/// Piecewise-constant injection onto a grid refined by factor in each
/// direction; the inverse of restrict_field on block-constant data.
ScalarField prolong_field(const ScalarField& coarse, int factor);

} // namespace ctflow
