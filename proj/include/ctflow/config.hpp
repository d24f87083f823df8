#pragma once

#include "ctflow/driver.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

namespace ctflow {

/// Flat `key = value` configuration, one entry per line, `#` starts a
/// comment. Keys are listed in docs/formats.md. Unknown keys, duplicate
/// keys and malformed values throw ConfigError naming the line.
ScenarioConfig parse_config(std::istream& in);
ScenarioConfig load_config(const std::filesystem::path& path);

/// Field spec of the config with the scenario grid filled in.
FieldSpec effective_field_spec(const ScenarioConfig& config);

/// FNV-1a 64 over a canonical rendering of every field that changes the
/// computed solution (grid, fluid, permeability source, initial and
/// injection data, scheme parameters, time stepping, solver tolerances).
/// Snapshot times and output choices are excluded.
std::uint64_t config_hash(const ScenarioConfig& config);

/// Canonical text used by config_hash; also a valid config file.
std::string canonical_config(const ScenarioConfig& config);

} // namespace ctflow
