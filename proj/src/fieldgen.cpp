#include "ctflow/fieldgen.hpp"

#include "ctflow/errors.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace ctflow {

namespace {

std::vector<double> white_noise(std::size_t n, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> out(n);
  for (auto& v : out)
    v = normal(rng);
  return out;
}

// Owning wrapper for an FFTW complex buffer.
struct FftwBuffer
{
  explicit FftwBuffer(std::size_t n) : data(fftw_alloc_complex(n)) {}
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  fftw_complex* data;
};

// Unnormalised in-place 2D transform of an ny x nx row-major array.
void fft_2d(FftwBuffer& buf, int nx, int ny, int sign)
{
  fftw_plan plan = fftw_plan_dft_2d(ny, nx, buf.data, buf.data, sign, FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
}

double wavenumber(int index, int n, double length)
{
  const int wrapped = index <= n / 2 ? index : index - n;
  return 2.0 * std::numbers::pi * wrapped / length;
}

} // namespace

void FieldSpec::validate() const
{
  if (nx < 1 || ny < 1)
    throw ShapeError("field grid must have at least one cell per direction");
  if (!(lx > 0.0) || !(ly > 0.0))
    throw ShapeError("field domain extents must be positive");
  if (!(target_cv >= 0.0) || !std::isfinite(target_cv))
    throw ConfigError("target_cv must be non-negative");
  if (!(mean_perm > 0.0) || !std::isfinite(mean_perm))
    throw ConfigError("mean_perm must be positive");
  if (!std::isfinite(hurst_like_exponent) || hurst_like_exponent <= -1.0)
    throw ConfigError("hurst_like_exponent must be greater than -1");
}

ScalarField generate_field(const FieldSpec& spec)
{
  spec.validate();
  const StructuredGrid grid(spec.nx, spec.ny, spec.lx, spec.ly);
  const std::size_t n = grid.cell_count();
  if (spec.target_cv == 0.0)
    return ScalarField(grid, spec.mean_perm);

  const auto noise = white_noise(n, spec.seed);
  FftwBuffer data(n);
  for (std::size_t i = 0; i < n; ++i) {
    data.data[i][0] = noise[i];
    data.data[i][1] = 0.0;
  }

  const int nx = spec.nx, ny = spec.ny;
  fft_2d(data, nx, ny, FFTW_FORWARD);

  const double ell = spec.correlation_length > 0.0 ? spec.correlation_length
                                                   : std::max(spec.lx, spec.ly) / 16.0;
  const double kc2 = std::pow(2.0 * std::numbers::pi / ell, 2);
  std::vector<double> amp(n, 0.0);
  double power = 0.0;
  for (int q = 0; q < ny; ++q)
    for (int p = 0; p < nx; ++p) {
      if (p == 0 && q == 0)
        continue;
      const double kx = wavenumber(p, nx, spec.lx);
      const double ky = wavenumber(q, ny, spec.ly);
      const double a = std::pow(kx * kx + ky * ky + kc2, -0.5 * (spec.hurst_like_exponent + 1.0));
      amp[grid.index(p, q)] = a;
      power += a * a;
    }
  if (power == 0.0) // single-cell grid: no non-constant mode exists
    return ScalarField(grid, spec.mean_perm);
  // Var(G) = (1/N) sum A^2 for unit white noise; scale that to one.
  const double norm = 1.0 / std::sqrt(power / double(n));
  for (std::size_t i = 0; i < n; ++i) {
    data.data[i][0] *= amp[i] * norm;
    data.data[i][1] *= amp[i] * norm;
  }

  fft_2d(data, nx, ny, FFTW_BACKWARD);

  const double sigma2 = std::log1p(spec.target_cv * spec.target_cv);
  const double sigma = std::sqrt(sigma2);
  ScalarField field(grid);
  for (std::size_t i = 0; i < n; ++i) {
    const double g = data.data[i][0] / double(n);
    field[i] = spec.mean_perm * std::exp(sigma * g - 0.5 * sigma2);
  }
  return field;
}

FieldStatistics field_statistics(const ScalarField& field)
{
  const auto v = field.values();
  FieldStatistics st;
  double sum = 0.0;
  st.min = v[0];
  st.max = v[0];
  for (double x : v) {
    sum += x;
    st.min = std::min(st.min, x);
    st.max = std::max(st.max, x);
  }
  st.mean = sum / double(v.size());
  double ss = 0.0;
  for (double x : v)
    ss += (x - st.mean) * (x - st.mean);
  st.stddev = std::sqrt(ss / double(v.size()));
  st.cv = st.mean != 0.0 ? st.stddev / st.mean : 0.0;
  return st;
}

} // namespace ctflow
