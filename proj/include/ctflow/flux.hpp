#pragma once

#include "ctflow/rockfluid.hpp"

#include <vector>

namespace ctflow {

/// Scalar flux function f(s) transported by the velocity field.
///
/// Either the Buckley-Leverett fractional flow of a FluidModel or the linear
/// flux f(s) = s (pure advection, used for accuracy studies). For the
/// Buckley-Leverett case the zeros of f'' in the mobile range are located
/// once at construction so that the maximum of |f'| over any interval can
/// be taken exactly from a handful of candidate points.
class FluxFunction
{
public:
  static FluxFunction buckley_leverett(const FluidModel& fluid);
  static FluxFunction linear();

  bool is_linear() const { return linear_; }
  const FluidModel& fluid() const { return fluid_; }

  double value(double s) const;
  double derivative(double s) const;

  /// max |f'(w)| for w between lo and hi (either order).
  double max_abs_derivative(double lo, double hi) const;

  /// Interior zeros of f'' (empty for the linear flux).
  const std::vector<double>& inflection_points() const { return inflections_; }

private:
  FluxFunction() = default;

  bool linear_ = false;
  FluidModel fluid_{};
  std::vector<double> inflections_;
};

} // namespace ctflow
