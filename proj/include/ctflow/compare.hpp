#pragma once

#include "ctflow/grid.hpp"
#include "ctflow/snapshot_io.hpp"

#include <string>
#include <vector>

namespace ctflow {

/// Relative L2 difference ||f - g|| / ||reference||, all norms weighted by
/// cell area. A reference on a finer nested grid is restricted to the grid
/// of f first. Throws ShapeError when f and g differ in grid or the
/// reference cannot be restricted onto it, DegenerateInputError when the
/// reference norm is zero.
double l2_relative_difference(const ScalarField& f, const ScalarField& g,
                              const ScalarField& reference);

/// Restricts `fine` onto `coarse_grid` by block means. Throws ShapeError
/// unless the grids are nested with the same factor in both directions.
ScalarField restrict_to(const ScalarField& fine, const StructuredGrid& coarse_grid);

struct ComparisonEntry
{
  std::string label; // NT, NTr, NTrr, ...
  int refinement = 1;
  double difference = 0.0;
};

struct ComparisonReport
{
  std::string reference_label;
  std::vector<ComparisonEntry> entries; // ordered by refinement

  bool strictly_decreasing() const;
};

/// Label of the NT solution refined `level` times: NT, NTr, NTrr, ...
std::string refinement_label(int level);

/// Differences between the coarse KT solution and every NT level, all
/// restricted to the KT grid and measured relative to the finest NT level.
/// NT levels are sorted by resolution; each must refine the KT grid by a
/// power of two.
ComparisonReport compare_refinement_study(const ScalarField& kt_coarse,
                                          std::vector<ScalarField> nt_levels);

ComparisonReport compare_refinement_study(const SnapshotFile& kt_coarse,
                                          const std::vector<SnapshotFile>& nt_levels);

} // namespace ctflow
