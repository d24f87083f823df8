#include "ctflow/compare.hpp"

#include "ctflow/errors.hpp"

#include <algorithm>
#include <cmath>

namespace ctflow {

ScalarField restrict_to(const ScalarField& fine, const StructuredGrid& cg)
{
  const auto& fg = fine.grid();
  if (fg == cg)
    return fine;
  if (fg.nx() % cg.nx() != 0 || fg.ny() % cg.ny() != 0 || fg.nx() / cg.nx() != fg.ny() / cg.ny())
    throw ShapeError("grids " + std::to_string(fg.nx()) + "x" + std::to_string(fg.ny()) + " and " +
                     std::to_string(cg.nx()) + "x" + std::to_string(cg.ny()) +
                     " are not nested");
  if (std::abs(fg.lx() - cg.lx()) > 1e-12 * cg.lx() || std::abs(fg.ly() - cg.ly()) > 1e-12 * cg.ly())
    throw ShapeError("grids cover different domains");
  return restrict_field(fine, fg.nx() / cg.nx());
}

double l2_relative_difference(const ScalarField& f, const ScalarField& g,
                              const ScalarField& reference)
{
  if (!(f.grid() == g.grid()))
    throw ShapeError("compared fields live on different grids");
  const ScalarField ref = restrict_to(reference, f.grid());
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    num += (f[i] - g[i]) * (f[i] - g[i]);
    den += ref[i] * ref[i];
  }
  // The common cell area cancels.
  if (!(den > 0.0))
    throw DegenerateInputError("reference field has zero norm");
  return std::sqrt(num / den);
}

bool ComparisonReport::strictly_decreasing() const
{
  for (std::size_t i = 1; i < entries.size(); ++i)
    if (!(entries[i].difference < entries[i - 1].difference))
      return false;
  return true;
}

std::string refinement_label(int level)
{
  return "NT" + std::string(std::size_t(std::max(level, 0)), 'r');
}

ComparisonReport compare_refinement_study(const ScalarField& kt, std::vector<ScalarField> nt)
{
  if (nt.empty())
    throw ConfigError("refinement study needs at least one NT solution");
  std::sort(nt.begin(), nt.end(),
            [](const ScalarField& a, const ScalarField& b) { return a.size() < b.size(); });
  const auto& kg = kt.grid();
  ComparisonReport rep;
  std::vector<int> factors;
  for (const auto& f : nt) {
    const int factor = f.grid().nx() / kg.nx();
    if (factor < 1 || (factor & (factor - 1)) != 0 || f.grid().nx() != factor * kg.nx())
      throw ShapeError("NT grids must refine the KT grid by powers of two");
    factors.push_back(factor);
  }
  for (std::size_t i = 1; i < factors.size(); ++i)
    if (factors[i] == factors[i - 1])
      throw ShapeError("two NT solutions share the same resolution");

  const ScalarField& reference = nt.back();
  rep.reference_label = refinement_label(int(std::log2(factors.back()) + 0.5));
  for (std::size_t i = 0; i < nt.size(); ++i) {
    const ScalarField level = restrict_to(nt[i], kg);
    const int lvl = int(std::log2(factors[i]) + 0.5);
    rep.entries.push_back({refinement_label(lvl), factors[i],
                           l2_relative_difference(level, kt, reference)});
  }
  return rep;
}

ComparisonReport compare_refinement_study(const SnapshotFile& kt,
                                          const std::vector<SnapshotFile>& nt)
{
  std::vector<ScalarField> fields;
  for (const auto& s : nt)
    fields.push_back(s.field);
  return compare_refinement_study(kt.field, std::move(fields));
}

} // namespace ctflow
