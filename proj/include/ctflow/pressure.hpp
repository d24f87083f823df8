#pragma once

#include "ctflow/grid.hpp"
#include "ctflow/rockfluid.hpp"

#include <span>
#include <vector>

namespace ctflow {

enum class EdgeCondition { no_flow, inflow, outflow };

/// Flow condition on one domain edge. `rate` is the total volumetric rate
/// (per unit depth) crossing the edge, spread uniformly over its faces.
struct EdgeFlow
{
  EdgeCondition kind = EdgeCondition::no_flow;
  double rate = 0.0;
};

struct PressureBoundary
{
  EdgeFlow left, right, bottom, top;
};

/// Point source (rate > 0) or sink (rate < 0) in one cell.
struct WellSource
{
  CellIndex cell;
  double rate = 0.0;
};

/// Incompressible pressure equation div v = q, v = -lambda(s) K grad p.
struct PressureProblem
{
  StructuredGrid grid;
  ScalarField permeability;
  ScalarField saturation;
  FluidModel fluid;
  PressureBoundary boundary;
  std::vector<WellSource> wells;

  /// Shape, positivity and source compatibility checks. Throws ShapeError,
  /// InvalidStateError or ConfigError.
  void validate() const;
};

/// Per-cell volumetric source: boundary inflow/outflow plus wells.
ScalarField cell_sources(const PressureProblem& problem);

/// Prescribed normal velocities on the domain boundary; interior faces zero.
FaceVelocityField boundary_velocities(const PressureProblem& problem);

/// Two-point flux coefficient of the face shared by two cells with
/// mobility-permeability products m_a, m_b:
///     T = 2 face_length / (spacing / m_a + spacing / m_b)
/// Throws InvalidStateError unless both products are positive.
double harmonic_transmissibility(double m_a, double m_b, double spacing, double face_length);

/// Transmissibility between adjacent cells a and b with lambda(s) K taken at
/// the cell saturations. Throws IndexError for non-adjacent cells.
double face_transmissibility(const PressureProblem& problem, CellIndex a, CellIndex b);

/// Symmetric five-point system sum_nb T (p_i - p_nb) = q_i.
struct LinearSystem
{
  StructuredGrid grid;
  std::vector<double> diag;
  std::vector<double> east;  // T between (j,k) and (j+1,k); 0 on the last column
  std::vector<double> north; // T between (j,k) and (j,k+1); 0 on the last row
  std::vector<double> rhs;

  explicit LinearSystem(const StructuredGrid& g);

  void apply(std::span<const double> x, std::span<double> y) const;
};

/// Assembles the cell-centred form of the lowest-order mixed method. The
/// right-hand side holds the raw sources; it is projected onto the
/// zero-mean subspace by solve_pcg. Throws ConfigError when sources do not
/// balance to 1e-12 relative.
LinearSystem assemble(const PressureProblem& problem);

enum class Preconditioner { jacobi, incomplete_cholesky };

struct PcgOptions
{
  double tol = 1e-10;
  int max_iter = 0; // <= 0 selects 10 * cell count
  Preconditioner preconditioner = Preconditioner::jacobi;
};

struct PcgResult
{
  ScalarField pressure;
  int iterations = 0;
  double relative_residual = 0.0; // ||b - A p|| / ||b|| after projection
};

/// Preconditioned conjugate gradients on the singular Neumann system. The
/// stopping test is on the true relative residual; the returned pressure
/// has zero mean. Throws SolverError when max_iter is exhausted.
PcgResult solve_pcg(const LinearSystem& system, const PcgOptions& options = {});

/// Face velocities from a converged pressure: v = T (p_a - p_b) / face
/// length on interior faces, prescribed values on boundary faces.
FaceVelocityField recover_velocities(const PressureProblem& problem, const ScalarField& pressure);

struct PressureSolution
{
  ScalarField pressure;
  FaceVelocityField velocity;
  int iterations = 0;
  double relative_residual = 0.0;
};

/// assemble + solve_pcg + recover_velocities.
PressureSolution solve_pressure(const PressureProblem& problem, const PcgOptions& options = {});

} // namespace ctflow
