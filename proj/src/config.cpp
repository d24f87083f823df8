#include "ctflow/config.hpp"

#include "ctflow/errors.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace ctflow {

namespace {

std::string trim(const std::string& s)
{
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& v, const std::string& where)
{
  double x = 0.0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size())
    throw ConfigError(where + ": expected a number, got '" + v + "'");
  return x;
}

long long to_integer(const std::string& v, const std::string& where)
{
  long long x = 0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size())
    throw ConfigError(where + ": expected an integer, got '" + v + "'");
  return x;
}

int to_int(const std::string& v, const std::string& where)
{
  const long long x = to_integer(v, where);
  if (x < -2147483647LL || x > 2147483647LL)
    throw ConfigError(where + ": integer out of range");
  return int(x);
}

std::vector<double> to_list(const std::string& v, const std::string& where)
{
  std::vector<double> out;
  std::string item;
  std::istringstream in(v);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty())
      continue;
    out.push_back(to_double(item, where));
  }
  return out;
}

template <class E>
E to_enum(const std::string& v, const std::string& where,
          std::initializer_list<std::pair<const char*, E>> names)
{
  for (const auto& [n, e] : names)
    if (v == n)
      return e;
  std::string valid;
  for (const auto& [n, e] : names)
    valid += (valid.empty() ? "" : "|") + std::string(n);
  throw ConfigError(where + ": expected " + valid + ", got '" + v + "'");
}

using Setter = std::function<void(ScenarioConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters()
{
  using C = ScenarioConfig;
  using S = std::string;
  static const std::map<std::string, Setter> table = {
      {"scenario.geometry",
       [](C& c, const S& v, const S& w) {
         c.geometry = to_enum<Geometry>(v, w,
                                        {{"slab", Geometry::slab},
                                         {"five-spot-diagonal", Geometry::five_spot_diagonal},
                                         {"five-spot-parallel", Geometry::five_spot_parallel}});
       }},
      {"scenario.nx", [](C& c, const S& v, const S& w) { c.nx = to_int(v, w); }},
      {"scenario.ny", [](C& c, const S& v, const S& w) { c.ny = to_int(v, w); }},
      {"scenario.lx", [](C& c, const S& v, const S& w) { c.lx = to_double(v, w); }},
      {"scenario.ly", [](C& c, const S& v, const S& w) { c.ly = to_double(v, w); }},
      {"scenario.initial_saturation",
       [](C& c, const S& v, const S& w) { c.initial_saturation = to_double(v, w); }},
      {"scenario.injection_rate_pv_per_year",
       [](C& c, const S& v, const S& w) { c.injection_rate_pv_per_year = to_double(v, w); }},
      {"scenario.injection_saturation",
       [](C& c, const S& v, const S& w) { c.injection_saturation = to_double(v, w); }},
      {"scenario.flux",
       [](C& c, const S& v, const S& w) {
         c.linear_flux = to_enum<bool>(v, w, {{"buckley-leverett", false}, {"linear", true}});
       }},
      {"fluid.mu_w", [](C& c, const S& v, const S& w) { c.fluid.mu_w = to_double(v, w); }},
      {"fluid.mu_o", [](C& c, const S& v, const S& w) { c.fluid.mu_o = to_double(v, w); }},
      {"fluid.s_rw", [](C& c, const S& v, const S& w) { c.fluid.s_rw = to_double(v, w); }},
      {"fluid.s_ro", [](C& c, const S& v, const S& w) { c.fluid.s_ro = to_double(v, w); }},
      {"field.source",
       [](C& c, const S& v, const S& w) {
         c.permeability_source =
             to_enum<PermeabilitySource>(v, w,
                                         {{"generate", PermeabilitySource::generate},
                                          {"file", PermeabilitySource::file},
                                          {"constant", PermeabilitySource::constant}});
       }},
      {"field.path", [](C& c, const S& v, const S&) { c.field_path = v; }},
      {"field.value",
       [](C& c, const S& v, const S& w) { c.constant_permeability = to_double(v, w); }},
      {"field.cv", [](C& c, const S& v, const S& w) { c.field.target_cv = to_double(v, w); }},
      {"field.mean", [](C& c, const S& v, const S& w) { c.field.mean_perm = to_double(v, w); }},
      {"field.hurst",
       [](C& c, const S& v, const S& w) { c.field.hurst_like_exponent = to_double(v, w); }},
      {"field.correlation_length",
       [](C& c, const S& v, const S& w) { c.field.correlation_length = to_double(v, w); }},
      {"field.seed",
       [](C& c, const S& v, const S& w) {
         const long long s = to_integer(v, w);
         if (s < 0)
           throw ConfigError(w + ": seed must be non-negative");
         c.field.seed = std::uint64_t(s);
       }},
      {"scheme.name",
       [](C& c, const S& v, const S& w) {
         c.scheme = to_enum<Scheme>(v, w, {{"nt", Scheme::nt}, {"kt", Scheme::kt}});
       }},
      {"scheme.theta", [](C& c, const S& v, const S& w) { c.theta = to_double(v, w); }},
      {"scheme.cfl_nt", [](C& c, const S& v, const S& w) { c.cfl_nt = to_double(v, w); }},
      {"scheme.cfl_kt", [](C& c, const S& v, const S& w) { c.cfl_kt = to_double(v, w); }},
      {"time.end_days", [](C& c, const S& v, const S& w) { c.end_days = to_double(v, w); }},
      {"time.pressure_step_days",
       [](C& c, const S& v, const S& w) { c.pressure_step_days = to_double(v, w); }},
      {"time.snapshot_days",
       [](C& c, const S& v, const S& w) { c.snapshot_days = to_list(v, w); }},
      {"time.scale", [](C& c, const S& v, const S& w) { c.time_scale = to_double(v, w); }},
      {"pressure.tol", [](C& c, const S& v, const S& w) { c.pcg.tol = to_double(v, w); }},
      {"pressure.max_iter", [](C& c, const S& v, const S& w) { c.pcg.max_iter = to_int(v, w); }},
      {"pressure.preconditioner",
       [](C& c, const S& v, const S& w) {
         c.pcg.preconditioner = to_enum<Preconditioner>(
             v, w,
             {{"jacobi", Preconditioner::jacobi}, {"ic0", Preconditioner::incomplete_cholesky}});
       }},
  };
  return table;
}

std::string fmt(double x)
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

} // namespace

ScenarioConfig parse_config(std::istream& in)
{
  ScenarioConfig c;
  std::set<std::string> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty())
      continue;
    const std::string where = "config line " + std::to_string(lineno);
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(where + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end())
      throw ConfigError(where + ": unknown key '" + key + "'");
    if (!seen.insert(key).second)
      throw ConfigError(where + ": duplicate key '" + key + "'");
    if (value.empty())
      throw ConfigError(where + ": empty value for '" + key + "'");
    it->second(c, value, where + " (" + key + ")");
  }
  c.validate();
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot open config file " + path.string());
  return parse_config(in);
}

FieldSpec effective_field_spec(const ScenarioConfig& c)
{
  FieldSpec s = c.field;
  s.nx = c.nx;
  s.ny = c.ny;
  s.lx = c.lx;
  s.ly = c.ly;
  return s;
}

std::string canonical_config(const ScenarioConfig& c)
{
  std::ostringstream o;
  o << "scenario.geometry = " << to_string(c.geometry) << "\n"
    << "scenario.nx = " << c.nx << "\n"
    << "scenario.ny = " << c.ny << "\n"
    << "scenario.lx = " << fmt(c.lx) << "\n"
    << "scenario.ly = " << fmt(c.ly) << "\n"
    << "scenario.initial_saturation = " << fmt(c.initial_saturation) << "\n"
    << "scenario.injection_rate_pv_per_year = " << fmt(c.injection_rate_pv_per_year) << "\n"
    << "scenario.injection_saturation = " << fmt(c.injection_saturation) << "\n"
    << "scenario.flux = " << (c.linear_flux ? "linear" : "buckley-leverett") << "\n"
    << "fluid.mu_w = " << fmt(c.fluid.mu_w) << "\n"
    << "fluid.mu_o = " << fmt(c.fluid.mu_o) << "\n"
    << "fluid.s_rw = " << fmt(c.fluid.s_rw) << "\n"
    << "fluid.s_ro = " << fmt(c.fluid.s_ro) << "\n"
    << "field.source = " << to_string(c.permeability_source) << "\n"
    << "field.path = " << (c.field_path.empty() ? "-" : c.field_path) << "\n"
    << "field.value = " << fmt(c.constant_permeability) << "\n"
    << "field.cv = " << fmt(c.field.target_cv) << "\n"
    << "field.mean = " << fmt(c.field.mean_perm) << "\n"
    << "field.hurst = " << fmt(c.field.hurst_like_exponent) << "\n"
    << "field.correlation_length = " << fmt(c.field.correlation_length) << "\n"
    << "field.seed = " << c.field.seed << "\n"
    << "scheme.name = " << to_string(c.scheme) << "\n"
    << "scheme.theta = " << fmt(c.theta) << "\n"
    << "scheme.cfl_nt = " << fmt(c.cfl_nt) << "\n"
    << "scheme.cfl_kt = " << fmt(c.cfl_kt) << "\n"
    << "time.end_days = " << fmt(c.end_days) << "\n"
    << "time.pressure_step_days = " << fmt(c.pressure_step_days) << "\n"
    << "time.scale = " << fmt(c.time_scale) << "\n"
    << "pressure.tol = " << fmt(c.pcg.tol) << "\n"
    << "pressure.max_iter = " << c.pcg.max_iter << "\n"
    << "pressure.preconditioner = "
    << (c.pcg.preconditioner == Preconditioner::jacobi ? "jacobi" : "ic0") << "\n";
  return o.str();
}

std::uint64_t config_hash(const ScenarioConfig& c)
{
  std::uint64_t h = 14695981039346656037ULL;
  auto mix = [&h](const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= p[i];
      h *= 1099511628211ULL;
    }
  };
  const std::string text = canonical_config(c);
  mix(text.data(), text.size());
  if (c.permeability) {
    const auto& g = c.permeability->grid();
    const int dims[2] = {g.nx(), g.ny()};
    mix(dims, sizeof dims);
    const auto v = c.permeability->values();
    mix(v.data(), v.size() * sizeof(double));
  }
  return h;
}

} // namespace ctflow
