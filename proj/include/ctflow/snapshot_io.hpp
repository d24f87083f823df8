#pragma once

#include "ctflow/grid.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

namespace ctflow {

enum class FieldKind { saturation, permeability, pressure };
enum class Encoding { text, raw };

const char* to_string(FieldKind k);
const char* to_string(Encoding e);

/// Header of a raster file; see docs/formats.md for the byte layout.
struct SnapshotHeader
{
  FieldKind kind = FieldKind::saturation;
  double time_days = 0.0;
  std::string scheme = "none";
  std::uint64_t config_hash = 0;
  Encoding encoding = Encoding::text;
};

struct SnapshotFile
{
  SnapshotHeader header;
  ScalarField field;
};

void write_snapshot(std::ostream& out, const SnapshotFile& snap);
/// Throws IoError on malformed input, ShapeError when the payload length
/// does not match the header dimensions.
SnapshotFile read_snapshot(std::istream& in);

/// File variants; both throw IoError when the file cannot be opened.
void write_snapshot(const std::filesystem::path& path, const SnapshotFile& snap);
SnapshotFile read_snapshot(const std::filesystem::path& path);

} // namespace ctflow
