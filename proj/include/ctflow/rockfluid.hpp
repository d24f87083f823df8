#pragma once

namespace ctflow {

/// Two-phase water/oil fluid and rock-fluid closures.
///
/// Relative permeabilities are quadratic:
///   krw(s) = (s - s_rw)^2 / (1 - s_rw)^2
///   kro(s) = (1 - s / (1 - s_ro))^2
/// Viscosities are in cP; only their ratio enters the fractional flow.
///
/// Saturation arguments are clamped before evaluation: krw sees
/// s in [s_rw, 1] and kro sees s in [0, 1 - s_ro], so both vanish outside
/// their mobile range instead of growing again through the square. As a
/// consequence f(s) == f(clamp(s, s_rw, 1 - s_ro)) for every s.
struct FluidModel
{
  double mu_w = 0.05;
  double mu_o = 10.0;
  double s_rw = 0.2;
  double s_ro = 0.15;

  /// Throws ConfigError unless mu_w, mu_o > 0 and 0 <= s_rw < 1 - s_ro <= 1.
  void validate() const;

  double s_min() const { return s_rw; }
  double s_max() const { return 1.0 - s_ro; }

  friend bool operator==(const FluidModel&, const FluidModel&) = default;
};

double krw(const FluidModel& fluid, double s);
double kro(const FluidModel& fluid, double s);

/// lambda(s) = krw/mu_w + kro/mu_o, in 1/cP.
double total_mobility(const FluidModel& fluid, double s);

/// f(s) = (krw/mu_w) / lambda(s).
double fractional_flow(const FluidModel& fluid, double s);

/// Analytic df/ds (quotient rule); zero outside [s_rw, 1 - s_ro].
double fractional_flow_derivative(const FluidModel& fluid, double s);

/// Analytic d2f/ds2 on the open mobile range; zero outside it.
double fractional_flow_second_derivative(const FluidModel& fluid, double s);

} // namespace ctflow
