#include "ctflow/pressure.hpp"

#include "ctflow/errors.hpp"

#include <cmath>
#include <memory>
#include <numeric>
#include <string>

namespace ctflow {

namespace {

double dot(std::span<const double> a, std::span<const double> b)
{
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += a[i] * b[i];
  return s;
}

// Signed normal velocity (positive along +x or +y) for a prescribed edge.
// `low_side` is true for the left and bottom edges.
double edge_velocity(const EdgeFlow& e, double edge_length, bool low_side)
{
  if (e.kind == EdgeCondition::no_flow)
    return 0.0;
  const double into = e.kind == EdgeCondition::inflow ? 1.0 : -1.0;
  const double u = into * e.rate / edge_length;
  return low_side ? u : -u;
}

double mobility_perm(const PressureProblem& p, std::size_t i)
{
  return total_mobility(p.fluid, p.saturation[i]) * p.permeability[i];
}

// Incomplete Cholesky of the five-point matrix (no fill), M = (D+L) D^-1 (D+L)^T.
// The factorised matrix carries a small relative diagonal shift so the
// pivots stay positive on the singular Neumann operator.
class IncompleteCholesky
{
public:
  explicit IncompleteCholesky(const LinearSystem& a) : sys_(a), d_(a.diag.size())
  {
    const int nx = a.grid.nx(), ny = a.grid.ny();
    for (int k = 0; k < ny; ++k)
      for (int j = 0; j < nx; ++j) {
        const std::size_t i = a.grid.index(j, k);
        double piv = a.diag[i] * (1.0 + kShift);
        if (j > 0)
          piv -= a.east[i - 1] * a.east[i - 1] / d_[i - 1];
        if (k > 0)
          piv -= a.north[i - nx] * a.north[i - nx] / d_[i - nx];
        if (!(piv > 0.0))
          piv = a.diag[i] > 0.0 ? a.diag[i] : 1.0;
        d_[i] = piv;
      }
  }

  void apply(std::span<const double> r, std::span<double> z) const
  {
    const int nx = sys_.grid.nx(), ny = sys_.grid.ny();
    // (D + L) w = r, off-diagonals of A are -T.
    for (int k = 0; k < ny; ++k)
      for (int j = 0; j < nx; ++j) {
        const std::size_t i = sys_.grid.index(j, k);
        double s = r[i];
        if (j > 0)
          s += sys_.east[i - 1] * z[i - 1];
        if (k > 0)
          s += sys_.north[i - nx] * z[i - nx];
        z[i] = s / d_[i];
      }
    // (D + L^T) z = D w
    for (int k = ny - 1; k >= 0; --k)
      for (int j = nx - 1; j >= 0; --j) {
        const std::size_t i = sys_.grid.index(j, k);
        double s = d_[i] * z[i];
        if (j < nx - 1)
          s += sys_.east[i] * z[i + 1];
        if (k < ny - 1)
          s += sys_.north[i] * z[i + nx];
        z[i] = s / d_[i];
      }
  }

private:
  static constexpr double kShift = 1e-4;
  const LinearSystem& sys_;
  std::vector<double> d_;
};

} // namespace

void PressureProblem::validate() const
{
  if (!(permeability.grid() == grid) || !(saturation.grid() == grid))
    throw ShapeError("permeability and saturation must live on the problem grid");
  for (std::size_t i = 0; i < grid.cell_count(); ++i)
    if (!(permeability[i] > 0.0) || !std::isfinite(permeability[i]))
      throw InvalidStateError("permeability must be positive in every cell");
  for (const auto& w : wells)
    if (!grid.contains(w.cell.j, w.cell.k))
      throw ConfigError("well outside the grid");
  fluid.validate();
  const auto src = cell_sources(*this);
  double net = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < src.size(); ++i) {
    net += src[i];
    scale += std::abs(src[i]);
  }
  if (std::abs(net) > 1e-12 * scale)
    throw ConfigError("incompatible sources: net injection " + std::to_string(net) +
                      " does not balance production");
}

ScalarField cell_sources(const PressureProblem& problem)
{
  const auto& g = problem.grid;
  ScalarField q(g);
  const auto& b = problem.boundary;
  const double u_left = edge_velocity(b.left, g.ly(), true);
  const double u_right = edge_velocity(b.right, g.ly(), false);
  const double v_bottom = edge_velocity(b.bottom, g.lx(), true);
  const double v_top = edge_velocity(b.top, g.lx(), false);
  for (int k = 0; k < g.ny(); ++k) {
    q(0, k) += u_left * g.dy();
    q(g.nx() - 1, k) -= u_right * g.dy();
  }
  for (int j = 0; j < g.nx(); ++j) {
    q(j, 0) += v_bottom * g.dx();
    q(j, g.ny() - 1) -= v_top * g.dx();
  }
  for (const auto& w : problem.wells)
    q(w.cell.j, w.cell.k) += w.rate;
  return q;
}

FaceVelocityField boundary_velocities(const PressureProblem& problem)
{
  const auto& g = problem.grid;
  const auto& b = problem.boundary;
  FaceVelocityField v(g);
  for (int k = 0; k < g.ny(); ++k) {
    v.vx(0, k) = edge_velocity(b.left, g.ly(), true);
    v.vx(g.nx(), k) = edge_velocity(b.right, g.ly(), false);
  }
  for (int j = 0; j < g.nx(); ++j) {
    v.vy(j, 0) = edge_velocity(b.bottom, g.lx(), true);
    v.vy(j, g.ny()) = edge_velocity(b.top, g.lx(), false);
  }
  return v;
}

double harmonic_transmissibility(double m_a, double m_b, double spacing, double face_length)
{
  if (!(m_a > 0.0) || !(m_b > 0.0))
    throw InvalidStateError("mobility times permeability must be positive on both sides of a face");
  return 2.0 * face_length / (spacing / m_a + spacing / m_b);
}

double face_transmissibility(const PressureProblem& problem, CellIndex a, CellIndex b)
{
  const auto& g = problem.grid;
  if (!g.contains(a.j, a.k) || !g.contains(b.j, b.k))
    throw IndexError("transmissibility requested for a cell outside the grid");
  const int dj = std::abs(a.j - b.j), dk = std::abs(a.k - b.k);
  if (dj + dk != 1)
    throw IndexError("transmissibility requested for non-adjacent cells");
  const double ma = mobility_perm(problem, g.index(a));
  const double mb = mobility_perm(problem, g.index(b));
  return dj == 1 ? harmonic_transmissibility(ma, mb, g.dx(), g.dy())
                 : harmonic_transmissibility(ma, mb, g.dy(), g.dx());
}

LinearSystem::LinearSystem(const StructuredGrid& g)
  : grid(g), diag(g.cell_count(), 0.0), east(g.cell_count(), 0.0), north(g.cell_count(), 0.0),
    rhs(g.cell_count(), 0.0)
{}

void LinearSystem::apply(std::span<const double> x, std::span<double> y) const
{
  const int nx = grid.nx(), ny = grid.ny();
  for (int k = 0; k < ny; ++k)
    for (int j = 0; j < nx; ++j) {
      const std::size_t i = grid.index(j, k);
      double s = diag[i] * x[i];
      if (j > 0)
        s -= east[i - 1] * x[i - 1];
      if (j < nx - 1)
        s -= east[i] * x[i + 1];
      if (k > 0)
        s -= north[i - nx] * x[i - nx];
      if (k < ny - 1)
        s -= north[i] * x[i + nx];
      y[i] = s;
    }
}

LinearSystem assemble(const PressureProblem& problem)
{
  problem.validate();
  const auto& g = problem.grid;
  LinearSystem sys(g);
  std::vector<double> mk(g.cell_count());
  for (std::size_t i = 0; i < mk.size(); ++i)
    mk[i] = mobility_perm(problem, i);
  for (int k = 0; k < g.ny(); ++k)
    for (int j = 0; j < g.nx(); ++j) {
      const std::size_t i = g.index(j, k);
      if (j < g.nx() - 1) {
        const double t = harmonic_transmissibility(mk[i], mk[i + 1], g.dx(), g.dy());
        sys.east[i] = t;
        sys.diag[i] += t;
        sys.diag[i + 1] += t;
      }
      if (k < g.ny() - 1) {
        const std::size_t up = g.index(j, k + 1);
        const double t = harmonic_transmissibility(mk[i], mk[up], g.dy(), g.dx());
        sys.north[i] = t;
        sys.diag[i] += t;
        sys.diag[up] += t;
      }
    }
  const auto q = cell_sources(problem);
  sys.rhs.assign(q.values().begin(), q.values().end());
  return sys;
}

PcgResult solve_pcg(const LinearSystem& system, const PcgOptions& options)
{
  const auto& g = system.grid;
  const std::size_t n = g.cell_count();
  const int max_iter = options.max_iter > 0 ? options.max_iter : int(10 * n);

  std::vector<double> b(system.rhs);
  const double mean = std::accumulate(b.begin(), b.end(), 0.0) / double(n);
  for (double& v : b)
    v -= mean;
  const double bnorm = std::sqrt(dot(b, b));

  PcgResult result{ScalarField(g), 0, 0.0};
  if (bnorm == 0.0)
    return result;

  std::vector<double> x(n, 0.0), r(b), z(n), p(n), ap(n);
  std::vector<double> inv_diag(n);
  for (std::size_t i = 0; i < n; ++i)
    inv_diag[i] = system.diag[i] > 0.0 ? 1.0 / system.diag[i] : 1.0;

  std::unique_ptr<IncompleteCholesky> ic;
  if (options.preconditioner == Preconditioner::incomplete_cholesky)
    ic = std::make_unique<IncompleteCholesky>(system);
  auto precondition = [&](std::span<const double> in, std::span<double> out) {
    if (ic) {
      ic->apply(in, out);
    } else {
      for (std::size_t i = 0; i < n; ++i)
        out[i] = inv_diag[i] * in[i];
    }
  };

  auto true_residual = [&]() {
    system.apply(x, ap);
    for (std::size_t i = 0; i < n; ++i)
      r[i] = b[i] - ap[i];
    return std::sqrt(dot(r, r)) / bnorm;
  };

  int it = 0;
  double rel = 1.0;
  // Restarts guard against drift between the recursive and true residual.
  while (it < max_iter) {
    precondition(r, z);
    p = z;
    double rz = dot(r, z);
    while (it < max_iter) {
      system.apply(p, ap);
      const double pap = dot(p, ap);
      if (!(pap > 0.0))
        break;
      const double alpha = rz / pap;
      for (std::size_t i = 0; i < n; ++i) {
        x[i] += alpha * p[i];
        r[i] -= alpha * ap[i];
      }
      ++it;
      if (std::sqrt(dot(r, r)) / bnorm <= options.tol)
        break;
      precondition(r, z);
      const double rz_new = dot(r, z);
      const double beta = rz_new / rz;
      rz = rz_new;
      for (std::size_t i = 0; i < n; ++i)
        p[i] = z[i] + beta * p[i];
    }
    rel = true_residual();
    if (rel <= options.tol)
      break;
  }
  if (rel > options.tol)
    throw SolverError("PCG did not converge in " + std::to_string(it) +
                          " iterations (relative residual " + std::to_string(rel) + ")",
                      rel, it);

  const double xmean = std::accumulate(x.begin(), x.end(), 0.0) / double(n);
  for (std::size_t i = 0; i < n; ++i)
    result.pressure[i] = x[i] - xmean;
  result.iterations = it;
  result.relative_residual = rel;
  return result;
}

FaceVelocityField recover_velocities(const PressureProblem& problem, const ScalarField& pressure)
{
  const auto& g = problem.grid;
  auto v = boundary_velocities(problem);
  for (int k = 0; k < g.ny(); ++k)
    for (int j = 1; j < g.nx(); ++j) {
      const double t = face_transmissibility(problem, {j - 1, k}, {j, k});
      v.vx(j, k) = t * (pressure(j - 1, k) - pressure(j, k)) / g.dy();
    }
  for (int k = 1; k < g.ny(); ++k)
    for (int j = 0; j < g.nx(); ++j) {
      const double t = face_transmissibility(problem, {j, k - 1}, {j, k});
      v.vy(j, k) = t * (pressure(j, k - 1) - pressure(j, k)) / g.dx();
    }
  return v;
}

PressureSolution solve_pressure(const PressureProblem& problem, const PcgOptions& options)
{
  const auto sys = assemble(problem);
  auto pcg = solve_pcg(sys, options);
  auto vel = recover_velocities(problem, pcg.pressure);
  return {std::move(pcg.pressure), std::move(vel), pcg.iterations, pcg.relative_residual};
}

} // namespace ctflow
