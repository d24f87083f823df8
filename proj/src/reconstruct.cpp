#include "ctflow/reconstruct.hpp"

#include "ctflow/errors.hpp"

#include <algorithm>
#include <string>

namespace ctflow {

double minmod3(double a, double b, double c)
{
  if (a > 0.0 && b > 0.0 && c > 0.0)
    return std::min({a, b, c});
  if (a < 0.0 && b < 0.0 && c < 0.0)
    return std::max({a, b, c});
  return 0.0;
}

void check_theta(double theta)
{
  if (!(theta >= 1.0 && theta <= 2.0))
    throw ConfigError("limiter theta must lie in [1, 2], got " + std::to_string(theta));
}

SlopeField limited_slopes(int nx, int ny, std::span<const double> v, double theta,
                          Topology topology)
{
  check_theta(theta);
  if (v.size() != std::size_t(nx) * ny)
    throw ShapeError("slope input does not match its dimensions");
  SlopeField s{nx, ny, std::vector<double>(v.size(), 0.0), std::vector<double>(v.size(), 0.0)};
  auto at = [&](int j, int k) { return v[std::size_t(k) * nx + j]; };
  auto limit = [theta](double left, double mid, double right) {
    const double dm = mid - left, dp = right - mid;
    return minmod3(theta * dm, 0.5 * (dm + dp), theta * dp);
  };

  for (int k = 0; k < ny; ++k)
    for (int j = 0; j < nx; ++j) {
      const std::size_t i = std::size_t(k) * nx + j;
      if (topology.periodic_x) {
        s.sx[i] = limit(at((j + nx - 1) % nx, k), v[i], at((j + 1) % nx, k));
      } else if (j > 0 && j < nx - 1) {
        s.sx[i] = limit(at(j - 1, k), v[i], at(j + 1, k));
      }
      if (topology.periodic_y) {
        s.sy[i] = limit(at(j, (k + ny - 1) % ny), v[i], at(j, (k + 1) % ny));
      } else if (k > 0 && k < ny - 1) {
        s.sy[i] = limit(at(j, k - 1), v[i], at(j, k + 1));
      }
    }
  return s;
}

SlopeField limited_slopes(const ScalarField& field, double theta, Topology topology)
{
  return limited_slopes(field.grid().nx(), field.grid().ny(), field.values(), theta, topology);
}

SlopeField flux_slopes(const ScalarField& sat, const FluxFunction& flux, double theta,
                       Topology topology)
{
  std::vector<double> fv(sat.size());
  for (std::size_t i = 0; i < fv.size(); ++i)
    fv[i] = flux.value(sat[i]);
  return limited_slopes(sat.grid().nx(), sat.grid().ny(), fv, theta, topology);
}

} // namespace ctflow
