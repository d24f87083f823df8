#include "ctflow/snapshot_io.hpp"

#include "ctflow/errors.hpp"

#include <bit>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>

namespace ctflow {

namespace {

constexpr const char* kMagic = "# ctflow snapshot v1";

std::string fmt(double x)
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_double(const std::string& s, const std::string& what)
{
  double x = 0.0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), x);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size())
    throw IoError("snapshot: bad " + what + " '" + s + "'");
  return x;
}

int parse_int(const std::string& s, const std::string& what)
{
  int x = 0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), x);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size())
    throw IoError("snapshot: bad " + what + " '" + s + "'");
  return x;
}

} // namespace

const char* to_string(FieldKind k)
{
  switch (k) {
  case FieldKind::saturation: return "saturation";
  case FieldKind::permeability: return "permeability";
  case FieldKind::pressure: return "pressure";
  }
  return "?";
}

const char* to_string(Encoding e)
{
  return e == Encoding::text ? "text" : "raw";
}

void write_snapshot(std::ostream& out, const SnapshotFile& s)
{
  const auto& g = s.field.grid();
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", (unsigned long long)s.header.config_hash);
  out << kMagic << "\n"
      << "kind " << to_string(s.header.kind) << "\n"
      << "nx " << g.nx() << "\n"
      << "ny " << g.ny() << "\n"
      << "lx " << fmt(g.lx()) << "\n"
      << "ly " << fmt(g.ly()) << "\n"
      << "time_days " << fmt(s.header.time_days) << "\n"
      << "scheme " << s.header.scheme << "\n"
      << "config_hash " << hash << "\n"
      << "encoding " << to_string(s.header.encoding) << "\n"
      << "data\n";
  if (s.header.encoding == Encoding::text) {
    for (double v : s.field.values())
      out << fmt(v) << "\n";
  } else {
    for (double v : s.field.values()) {
      const auto bits = std::bit_cast<std::uint64_t>(v);
      char bytes[8];
      for (int b = 0; b < 8; ++b)
        bytes[b] = char((bits >> (8 * b)) & 0xffu);
      out.write(bytes, 8);
    }
  }
  if (!out)
    throw IoError("snapshot: write failed");
}

SnapshotFile read_snapshot(std::istream& in)
{
  std::string line;
  if (!std::getline(in, line) || line != kMagic)
    throw IoError("snapshot: missing header line");
  std::map<std::string, std::string> h;
  while (true) {
    if (!std::getline(in, line))
      throw IoError("snapshot: header ends before 'data'");
    if (line == "data")
      break;
    const auto sp = line.find(' ');
    if (sp == std::string::npos)
      throw IoError("snapshot: malformed header line '" + line + "'");
    h[line.substr(0, sp)] = line.substr(sp + 1);
  }
  auto field = [&h](const char* key) -> const std::string& {
    const auto it = h.find(key);
    if (it == h.end())
      throw IoError(std::string("snapshot: header lacks '") + key + "'");
    return it->second;
  };

  SnapshotHeader hd;
  const std::string& kind = field("kind");
  if (kind == "saturation")
    hd.kind = FieldKind::saturation;
  else if (kind == "permeability")
    hd.kind = FieldKind::permeability;
  else if (kind == "pressure")
    hd.kind = FieldKind::pressure;
  else
    throw IoError("snapshot: unknown kind '" + kind + "'");
  const int nx = parse_int(field("nx"), "nx"), ny = parse_int(field("ny"), "ny");
  const double lx = parse_double(field("lx"), "lx"), ly = parse_double(field("ly"), "ly");
  hd.time_days = parse_double(field("time_days"), "time_days");
  hd.scheme = field("scheme");
  {
    const std::string& s = field("config_hash");
    const auto r = std::from_chars(s.data(), s.data() + s.size(), hd.config_hash, 16);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size())
      throw IoError("snapshot: bad config_hash '" + s + "'");
  }
  const std::string& enc = field("encoding");
  if (enc == "text")
    hd.encoding = Encoding::text;
  else if (enc == "raw")
    hd.encoding = Encoding::raw;
  else
    throw IoError("snapshot: unknown encoding '" + enc + "'");

  const StructuredGrid g(nx, ny, lx, ly);
  std::vector<double> v;
  v.reserve(g.cell_count());
  if (hd.encoding == Encoding::text) {
    while (std::getline(in, line)) {
      if (line.empty())
        continue;
      v.push_back(parse_double(line, "value"));
    }
  } else {
    char bytes[8];
    while (in.read(bytes, 8)) {
      std::uint64_t bits = 0;
      for (int b = 0; b < 8; ++b)
        bits |= std::uint64_t(static_cast<unsigned char>(bytes[b])) << (8 * b);
      v.push_back(std::bit_cast<double>(bits));
    }
    if (in.gcount() != 0)
      throw ShapeError("snapshot: trailing partial value in raw payload");
  }
  if (v.size() != g.cell_count())
    throw ShapeError("snapshot: payload has " + std::to_string(v.size()) + " values, header says " +
                     std::to_string(g.cell_count()));
  return {hd, ScalarField(g, std::move(v))};
}

void write_snapshot(const std::filesystem::path& path, const SnapshotFile& s)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw IoError("cannot open " + path.string() + " for writing");
  write_snapshot(out, s);
}

SnapshotFile read_snapshot(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot open " + path.string());
  return read_snapshot(in);
}

} // namespace ctflow
