#pragma once

#include "ctflow/grid.hpp"

#include <cstdint>

namespace ctflow {

/// Parameters of a log-normal permeability field.
///
/// The underlying Gaussian field is synthesised spectrally: real white noise
/// (std::mt19937_64 seeded with `seed`, drawn through
/// std::normal_distribution) is transformed with FFTW and filtered with the
/// amplitude spectrum
///
///     A(k) = (|k|^2 + k_c^2)^(-(hurst_like_exponent + 1) / 2),  k_c = 2 pi / correlation_length
///
/// and normalised so that the Gaussian marginal has unit variance exactly.
/// Permeability is then mean_perm * exp(sigma G - sigma^2 / 2) with
/// sigma^2 = ln(1 + target_cv^2), which gives the requested mean and
/// coefficient of variation for the marginal distribution.
struct FieldSpec
{
  int nx = 64;
  int ny = 16;
  double lx = 256.0;
  double ly = 64.0;
  double target_cv = 0.5;
  double mean_perm = 1.0;
  double hurst_like_exponent = 0.5;
  /// Large-scale cutoff length; <= 0 selects max(lx, ly) / 16.
  double correlation_length = 0.0;
  std::uint64_t seed = 1;

  /// Throws ShapeError for a non-positive grid, ConfigError for bad values.
  void validate() const;
};

ScalarField generate_field(const FieldSpec& spec);

struct FieldStatistics
{
  double mean = 0.0;
  double stddev = 0.0; // population standard deviation
  double cv = 0.0;
  double min = 0.0;
  double max = 0.0;
};

FieldStatistics field_statistics(const ScalarField& field);

} // namespace ctflow
