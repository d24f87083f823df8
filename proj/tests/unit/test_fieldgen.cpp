#include "ctflow/errors.hpp"
#include "ctflow/fieldgen.hpp"

#include "doctest.h"

#include <cmath>

using namespace ctflow;
using doctest::Approx;

TEST_CASE("zero CV gives a constant field")
{
  FieldSpec s;
  s.target_cv = 0.0;
  s.mean_perm = 3.5;
  const ScalarField k = generate_field(s);
  for (double v : k.values())
    CHECK(v == 3.5);
}

TEST_CASE("field statistics examples")
{
  const StructuredGrid g(2, 1, 2, 1);
  const FieldStatistics c = field_statistics(ScalarField(g, 4.0));
  CHECK(c.mean == 4.0);
  CHECK(c.stddev == 0.0);
  CHECK(c.cv == 0.0);
  CHECK(c.min == 4.0);
  CHECK(c.max == 4.0);
  const FieldStatistics t = field_statistics(ScalarField(g, {1.0, 3.0}));
  CHECK(t.mean == Approx(2.0));
  CHECK(t.stddev == Approx(1.0));
  CHECK(t.cv == Approx(0.5));
}

TEST_CASE("sample CV tracks the target")
{
  FieldSpec s;
  s.nx = 256;
  s.ny = 64;
  s.seed = 11;
  s.target_cv = 0.5;
  const FieldStatistics a = field_statistics(generate_field(s));
  CHECK(std::abs(a.cv - 0.5) <= 0.15 * 0.5);
  CHECK(a.mean == Approx(1.0).epsilon(0.1));

  s.target_cv = 2.2;
  const FieldStatistics b = field_statistics(generate_field(s));
  CHECK(std::abs(b.cv - 2.2) <= 0.25 * 2.2);
}

TEST_CASE("generation is deterministic and positive")
{
  FieldSpec s;
  s.seed = 42;
  s.target_cv = 1.2;
  const ScalarField a = generate_field(s), b = generate_field(s);
  CHECK(a == b);
  for (double v : a.values())
    CHECK(v > 0.0);
  s.seed = 43;
  CHECK(!(generate_field(s) == a));
}

TEST_CASE("larger target CV gives larger sample CV for a fixed seed")
{
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    FieldSpec s;
    s.seed = seed;
    double prev = -1.0;
    for (double cv : {0.5, 1.2, 2.2}) {
      s.target_cv = cv;
      const double got = field_statistics(generate_field(s)).cv;
      CHECK(got > prev);
      prev = got;
    }
  }
}

TEST_CASE("field spec validation")
{
  FieldSpec s;
  s.nx = 0;
  CHECK_THROWS_AS(generate_field(s), ShapeError);
  s = FieldSpec{};
  s.target_cv = -1.0;
  CHECK_THROWS_AS(generate_field(s), ConfigError);
  s = FieldSpec{};
  s.mean_perm = 0.0;
  CHECK_THROWS_AS(generate_field(s), ConfigError);
}
