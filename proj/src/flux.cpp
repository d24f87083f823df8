#include "ctflow/flux.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace ctflow {

namespace {

constexpr int kBracketScan = 4096;

std::vector<double> find_inflections(const FluidModel& fl)
{
  std::vector<double> roots;
  const double lo = fl.s_min();
  const double hi = fl.s_max();
  const double h = (hi - lo) / kBracketScan;
  auto f2 = [&](double s) { return fractional_flow_second_derivative(fl, s); };

  double left = lo + 1e-3 * h;
  double f_left = f2(left);
  for (int i = 1; i <= kBracketScan; ++i) {
    const double right = (i == kBracketScan) ? hi - 1e-3 * h : lo + i * h;
    const double f_right = f2(right);
    if (f_left == 0.0) {
      roots.push_back(left);
    } else if (f_left * f_right < 0.0) {
      std::uintmax_t iters = 200;
      auto tol = boost::math::tools::eps_tolerance<double>(52);
      auto [a, b] = boost::math::tools::toms748_solve(f2, left, right, f_left, f_right, tol, iters);
      roots.push_back(0.5 * (a + b));
    }
    left = right;
    f_left = f_right;
  }
  return roots;
}

} // namespace

FluxFunction FluxFunction::buckley_leverett(const FluidModel& fluid)
{
  fluid.validate();
  FluxFunction f;
  f.fluid_ = fluid;
  f.inflections_ = find_inflections(fluid);
  return f;
}

FluxFunction FluxFunction::linear()
{
  FluxFunction f;
  f.linear_ = true;
  return f;
}

double FluxFunction::value(double s) const
{
  return linear_ ? s : fractional_flow(fluid_, s);
}

double FluxFunction::derivative(double s) const
{
  return linear_ ? 1.0 : fractional_flow_derivative(fluid_, s);
}

double FluxFunction::max_abs_derivative(double lo, double hi) const
{
  if (linear_)
    return 1.0;
  if (lo > hi)
    std::swap(lo, hi);
  lo = std::clamp(lo, fluid_.s_min(), fluid_.s_max());
  hi = std::clamp(hi, fluid_.s_min(), fluid_.s_max());
  double m = std::max(std::abs(derivative(lo)), std::abs(derivative(hi)));
  for (double c : inflections_)
    if (c > lo && c < hi)
      m = std::max(m, std::abs(derivative(c)));
  return m;
}

} // namespace ctflow
