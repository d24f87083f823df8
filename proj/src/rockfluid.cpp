#include "ctflow/rockfluid.hpp"

#include "ctflow/errors.hpp"

#include <algorithm>
#include <cmath>

namespace ctflow {

namespace {

// Phase mobilities a = krw/mu_w, b = kro/mu_o and their first two
// derivatives, evaluated inside the mobile range.
struct Mobilities
{
  double a, da, d2a;
  double b, db, d2b;
};

Mobilities mobilities(const FluidModel& fl, double s)
{
  const double cw = 1.0 / (fl.mu_w * (1.0 - fl.s_rw) * (1.0 - fl.s_rw));
  const double so = 1.0 - fl.s_ro;
  const double co = 1.0 / fl.mu_o;
  const double ds = s - fl.s_rw;
  const double base = 1.0 - s / so;
  return {cw * ds * ds, 2.0 * cw * ds, 2.0 * cw,
          co * base * base, -2.0 * co * base / so, 2.0 * co / (so * so)};
}

} // namespace

void FluidModel::validate() const
{
  if (!(mu_w > 0.0) || !(mu_o > 0.0))
    throw ConfigError("viscosities must be positive");
  if (!(s_rw >= 0.0) || !(s_ro >= 0.0) || !(s_rw < 1.0 - s_ro))
    throw ConfigError("residual saturations must satisfy 0 <= s_rw < 1 - s_ro <= 1");
}

double krw(const FluidModel& fl, double s)
{
  const double c = std::clamp(s, fl.s_rw, 1.0) - fl.s_rw;
  return c * c / ((1.0 - fl.s_rw) * (1.0 - fl.s_rw));
}

double kro(const FluidModel& fl, double s)
{
  const double so = 1.0 - fl.s_ro;
  const double base = 1.0 - std::clamp(s, 0.0, so) / so;
  return base * base;
}

double total_mobility(const FluidModel& fl, double s)
{
  return krw(fl, s) / fl.mu_w + kro(fl, s) / fl.mu_o;
}

double fractional_flow(const FluidModel& fl, double s)
{
  const double a = krw(fl, s) / fl.mu_w;
  return a / (a + kro(fl, s) / fl.mu_o);
}

double fractional_flow_derivative(const FluidModel& fl, double s)
{
  if (s <= fl.s_min() || s >= fl.s_max())
    return 0.0;
  const auto m = mobilities(fl, s);
  const double sum = m.a + m.b;
  return (m.da * m.b - m.a * m.db) / (sum * sum);
}

double fractional_flow_second_derivative(const FluidModel& fl, double s)
{
  if (s <= fl.s_min() || s >= fl.s_max())
    return 0.0;
  const auto m = mobilities(fl, s);
  const double sum = m.a + m.b;
  const double num = m.da * m.b - m.a * m.db;
  const double dnum = m.d2a * m.b - m.a * m.d2b;
  return (dnum * sum - 2.0 * num * (m.da + m.db)) / (sum * sum * sum);
}

} // namespace ctflow
