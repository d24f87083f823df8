#include "ctflow/transport_nt.hpp"

#include "ctflow/errors.hpp"

#include <cmath>
#include <string>

namespace ctflow {

StaggeredField::StaggeredField(const StructuredGrid& grid, Topology topology, double fill)
    : grid_(grid), topology_(topology), mx_(topology.periodic_x ? grid.nx() : grid.nx() + 1),
      my_(topology.periodic_y ? grid.ny() : grid.ny() + 1),
      values_(std::size_t(mx_) * my_, fill)
{
}

double StaggeredField::area_fraction(int m, int n) const
{
  double a = 1.0;
  if (!topology_.periodic_x && (m == 0 || m == grid_.nx()))
    a *= 0.5;
  if (!topology_.periodic_y && (n == 0 || n == grid_.ny()))
    a *= 0.5;
  return a;
}

double StaggeredField::integral() const
{
  double sum = 0.0;
  for (int n = 0; n < my_; ++n)
    for (int m = 0; m < mx_; ++m)
      sum += (*this)(m, n) * area_fraction(m, n);
  return sum * grid_.cell_area();
}

namespace {

// One cell adjacent to a vertex along an axis. `low` is true when the cell
// lies on the low side of the vertex (left or below).
struct Side
{
  int index;
  bool low;
};

// Cells touching vertex coordinate m on an axis of n cells.
int sides_of(int m, int n, bool periodic, Side out[2])
{
  int count = 0;
  if (periodic) {
    out[count++] = {(m + n - 1) % n, true};
    out[count++] = {m % n, false};
    return count;
  }
  if (m - 1 >= 0)
    out[count++] = {m - 1, true};
  if (m < n)
    out[count++] = {m, false};
  return count;
}

double center_vx(const TransportProblem& p, int j, int k)
{
  return 0.5 * (face_vx(p, j, k) + face_vx(p, j + 1, k));
}

double center_vy(const TransportProblem& p, int j, int k)
{
  return 0.5 * (face_vy(p, j, k) + face_vy(p, j, k + 1));
}

void record(WaterExchange* ex, double outward_volume)
{
  if (!ex)
    return;
  if (outward_volume > 0.0)
    ex->produced += outward_volume;
  else
    ex->injected -= outward_volume;
}

} // namespace

ScalarField predictor_midvalues(const ScalarField& sat, const SlopeField& fs,
                                const TransportProblem& p, double dt)
{
  const auto& g = sat.grid();
  if (fs.nx != g.nx() || fs.ny != g.ny())
    throw ShapeError("flux slopes do not match the saturation grid");
  ScalarField mid(g);
  const double ax = 0.5 * dt / g.dx(), ay = 0.5 * dt / g.dy();
  for (int k = 0; k < g.ny(); ++k)
    for (int j = 0; j < g.nx(); ++j)
      mid(j, k) = sat(j, k) - ax * center_vx(p, j, k) * fs.x(j, k) -
                  ay * center_vy(p, j, k) * fs.y(j, k);
  return mid;
}

StaggeredField staggered_average(const ScalarField& sat, const SlopeField& slopes,
                                 Topology topology)
{
  const auto& g = sat.grid();
  if (slopes.nx != g.nx() || slopes.ny != g.ny())
    throw ShapeError("slopes do not match the saturation grid");
  StaggeredField z(g, topology);
  Side xs[2], ys[2];
  for (int n = 0; n < z.my(); ++n) {
    const int cy = sides_of(n, g.ny(), topology.periodic_y, ys);
    for (int m = 0; m < z.mx(); ++m) {
      const int cx = sides_of(m, g.nx(), topology.periodic_x, xs);
      double sum = 0.0;
      for (int a = 0; a < cx; ++a)
        for (int b = 0; b < cy; ++b) {
          const int j = xs[a].index, k = ys[b].index;
          // The quadrant lies in the half of the cell facing the vertex.
          const double sigx = xs[a].low ? 1.0 : -1.0;
          const double sigy = ys[b].low ? 1.0 : -1.0;
          sum += 0.25 * sat(j, k) + (sigx * slopes.x(j, k) + sigy * slopes.y(j, k)) / 16.0;
        }
      z(m, n) = sum / z.area_fraction(m, n);
    }
  }
  return z;
}

StaggeredField staggered_corrector(const StaggeredField& now, const ScalarField& mid,
                                   const TransportProblem& p, double dt, WaterExchange* exchange)
{
  const auto& g = now.grid();
  if (!(mid.grid() == g))
    throw ShapeError("midvalues do not match the staggered grid");
  const Topology topo = now.topology();
  const int nx = g.nx(), ny = g.ny();
  const double dx = g.dx(), dy = g.dy();

  // Cell-centre water fluxes and per-cell well water rates at the half step.
  std::vector<double> gx(g.cell_count()), gy(g.cell_count()), q(g.cell_count(), 0.0);
  for (int k = 0; k < ny; ++k)
    for (int j = 0; j < nx; ++j) {
      const double f = p.flux.value(mid(j, k));
      gx[g.index(j, k)] = center_vx(p, j, k) * f;
      gy[g.index(j, k)] = center_vy(p, j, k) * f;
    }
  for (const auto& w : p.wells) {
    const std::size_t i = g.index(w.cell);
    const double qw = well_water_rate(p, w.rate, mid[i]);
    q[i] += qw;
    record(exchange, -qw * dt);
  }

  StaggeredField next(g, topo);
  Side xs[2], ys[2];
  for (int n = 0; n < now.my(); ++n) {
    const int cy = sides_of(n, ny, topo.periodic_y, ys);
    for (int m = 0; m < now.mx(); ++m) {
      const int cx = sides_of(m, nx, topo.periodic_x, xs);
      double outflow = 0.0, source = 0.0;
      for (int a = 0; a < cx; ++a)
        for (int b = 0; b < cy; ++b) {
          const int j = xs[a].index, k = ys[b].index;
          const std::size_t i = g.index(j, k);
          // Line through the centre of a low-side cell bounds the staggered
          // cell from below/left, so its flux enters.
          outflow += (xs[a].low ? -1.0 : 1.0) * 0.5 * dy * gx[i];
          outflow += (ys[b].low ? -1.0 : 1.0) * 0.5 * dx * gy[i];
          source += 0.25 * q[i];
        }

      double edge = 0.0;
      if (!topo.periodic_x && (m == 0 || m == nx)) {
        const bool low = m == 0;
        const EdgeKind kind = low ? p.boundary.left : p.boundary.right;
        const int j = low ? 0 : nx - 1;
        for (int b = 0; b < cy; ++b) {
          const int k = ys[b].index;
          const double e = 0.5 * dy * boundary_water_flux(p, kind, p.velocity.vx(m, k), low, mid(j, k));
          record(exchange, e * dt);
          edge += e;
        }
      }
      if (!topo.periodic_y && (n == 0 || n == ny)) {
        const bool low = n == 0;
        const EdgeKind kind = low ? p.boundary.bottom : p.boundary.top;
        const int k = low ? 0 : ny - 1;
        for (int a = 0; a < cx; ++a) {
          const int j = xs[a].index;
          const double e = 0.5 * dx * boundary_water_flux(p, kind, p.velocity.vy(j, n), low, mid(j, k));
          record(exchange, e * dt);
          edge += e;
        }
      }

      const double area = now.area_fraction(m, n) * dx * dy;
      next(m, n) = now(m, n) + dt * (source - outflow - edge) / area;
    }
  }
  return next;
}

ScalarField reaverage_to_grid(const StaggeredField& z, double theta)
{
  const auto& g = z.grid();
  const Topology topo = z.topology();
  const SlopeField zs = limited_slopes(z.mx(), z.my(), z.values(), theta, topo);
  ScalarField out(g);
  for (int k = 0; k < g.ny(); ++k)
    for (int j = 0; j < g.nx(); ++j) {
      double sum = 0.0;
      for (int dm = 0; dm < 2; ++dm)
        for (int dn = 0; dn < 2; ++dn) {
          const int m = topo.periodic_x ? (j + dm) % g.nx() : j + dm;
          const int n = topo.periodic_y ? (k + dn) % g.ny() : k + dn;
          // The cell sits on the high side of its low vertex.
          const double taux = dm == 0 ? 1.0 : -1.0;
          const double tauy = dn == 0 ? 1.0 : -1.0;
          sum += 0.25 * z(m, n) + (taux * zs.x(m, n) + tauy * zs.y(m, n)) / 16.0;
        }
      out(j, k) = sum;
    }
  return out;
}

TransportStepResult nt_step(const ScalarField& sat, const TransportProblem& p, double dt)
{
  check_transport_problem(sat, p);
  if (!(dt > 0.0))
    throw TimeStepError("NT step length must be positive");
  const WaveRates r = max_wave_rates(sat, p);
  const double courant = dt * std::max(r.x, r.y);
  if (courant > kNtCourantLimit * (1.0 + 1e-12))
    throw TimeStepError("NT Courant number " + std::to_string(courant) + " exceeds " +
                        std::to_string(kNtCourantLimit));

  const Topology topo = p.boundary.topology();
  const SlopeField ss = limited_slopes(sat, p.theta, topo);
  const SlopeField fs = flux_slopes(sat, p.flux, p.theta, topo);
  const ScalarField mid = predictor_midvalues(sat, fs, p, dt);
  const StaggeredField z = staggered_average(sat, ss, topo);
  WaterExchange ex;
  const StaggeredField zn = staggered_corrector(z, mid, p, dt, &ex);
  ScalarField out = reaverage_to_grid(zn, p.theta);
  if (!out.all_finite())
    throw BlowUpError("non-finite saturation after NT step");
  return {std::move(out), ex};
}

} // namespace ctflow
