// Command-line front end: gen-field, run, compare, export.

#include "ctflow/compare.hpp"
#include "ctflow/config.hpp"
#include "ctflow/driver.hpp"
#include "ctflow/errors.hpp"
#include "ctflow/plot_export.hpp"
#include "ctflow/snapshot_io.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace ctflow;

namespace {

enum Exit : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kConfig = 3,
  kIo = 4,
  kShape = 5,
  kSolver = 6,
  kBlowUp = 7,
  kDegenerate = 8,
};

constexpr const char* kExitHelp = R"(Exit status:
  0  success
  1  internal error
  2  usage error (unknown flag, missing argument)
  3  configuration error (malformed or invalid config value)
  4  I/O error (missing or unreadable file)
  5  shape error (grid mismatch, non-nested grids)
  6  pressure solver failure
  7  transport time-step violation or blow-up
  8  degenerate input (zero reference norm))";

std::string day_tag(double t)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%09.3f", t);
  return buf;
}

void ensure_dir(const fs::path& dir)
{
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
}

std::vector<double> parse_levels(const std::string& s)
{
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const auto comma = s.find(',', pos);
    const std::string item = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (!item.empty()) {
      try {
        std::size_t used = 0;
        out.push_back(std::stod(item, &used));
        if (used != item.size())
          throw std::invalid_argument(item);
      } catch (const std::logic_error&) {
        throw ConfigError("bad number '" + item + "' in list");
      }
    }
    if (comma == std::string::npos)
      break;
    pos = comma + 1;
  }
  return out;
}

nlohmann::json report_json(const ScenarioConfig& cfg, const RunResult& r, std::uint64_t hash)
{
  nlohmann::json j;
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", (unsigned long long)hash);
  j["config_hash"] = hex;
  j["scheme"] = to_string(cfg.scheme);
  j["geometry"] = to_string(cfg.geometry);
  j["grid"] = {cfg.nx, cfg.ny};
  j["wall_seconds"] = r.report.wall_seconds;
  j["pressure_solves"] = r.report.pressure_solves;
  j["micro_steps"] = r.report.micro_steps;
  j["pcg_iterations"] = r.report.pcg_iterations;
  j["max_pcg_residual"] = r.report.max_pcg_residual;
  j["max_mass_imbalance"] = r.report.max_mass_imbalance;
  j["min_saturation"] = r.report.min_saturation;
  j["max_saturation"] = r.report.max_saturation;
  auto& h = j["history"] = nlohmann::json::array();
  for (const auto& e : r.report.history)
    h.push_back({{"time_days", e.time_days}, {"min", e.min_saturation}, {"max", e.max_saturation}});
  auto& s = j["snapshots"] = nlohmann::json::array();
  for (const auto& snap : r.snapshots)
    s.push_back({{"requested_days", snap.requested_days},
                 {"time_days", snap.time_days},
                 {"mass_imbalance", snap.mass_imbalance}});
  return j;
}

int dispatch_errors(const std::function<void()>& body)
{
  try {
    body();
    return kOk;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const InvalidStateError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kConfig;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const ShapeError& e) {
    std::cerr << "shape error: " << e.what() << "\n";
    return kShape;
  } catch (const IndexError& e) {
    std::cerr << "shape error: " << e.what() << "\n";
    return kShape;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kSolver;
  } catch (const TimeStepError& e) {
    std::cerr << "time-step error: " << e.what() << "\n";
    return kBlowUp;
  } catch (const BlowUpError& e) {
    std::cerr << "blow-up: " << e.what() << "\n";
    return kBlowUp;
  } catch (const DegenerateInputError& e) {
    std::cerr << "degenerate input: " << e.what() << "\n";
    return kDegenerate;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Two-phase porous-media flow with central transport schemes"};
  app.footer(kExitHelp);
  app.require_subcommand(1);

  std::string config_path, out_dir = ".", scheme, snapshot_days;
  std::uint64_t seed = 0;
  bool raw = false, text = false;

  auto add_encoding = [&](CLI::App* sub) {
    auto* r = sub->add_flag("--raw", raw, "Write raw little-endian float64 payloads");
    auto* t = sub->add_flag("--text", text, "Write decimal text payloads (default)");
    r->excludes(t);
  };

  auto* gen = app.add_subcommand("gen-field", "Write a permeability raster from a config");
  gen->add_option("--config", config_path, "Config file (field.* and scenario grid keys)")
      ->required();
  gen->add_option("--seed", seed, "Override field.seed");
  gen->add_option("--out", out_dir, "Output directory (writes permeability.snap)");
  add_encoding(gen);

  auto* runc = app.add_subcommand("run", "Run a scenario and write saturation snapshots");
  runc->add_option("--config", config_path, "Scenario config file")->required();
  runc->add_option("--scheme", scheme, "Override scheme.name")
      ->check(CLI::IsMember({"nt", "kt"}));
  runc->add_option("--seed", seed, "Override field.seed");
  runc->add_option("--snapshot-days", snapshot_days, "Comma-separated snapshot times in days");
  runc->add_option("--out", out_dir, "Output directory for snapshots and report.json");
  add_encoding(runc);

  std::string kt_path;
  std::vector<std::string> nt_paths;
  auto* cmp = app.add_subcommand("compare", "Refinement study: KT coarse against NT levels");
  cmp->add_option("--kt", kt_path, "KT snapshot on the coarse grid")->required();
  cmp->add_option("--nt", nt_paths, "NT snapshots (1x, 2x, 4x ... refinement)")->required();
  cmp->add_option("--out", out_dir, "Output directory for comparison.json");

  std::string snap_path, kind = "surface", levels;
  auto* exp = app.add_subcommand("export", "Export plot data from a snapshot");
  exp->add_option("--snapshot", snap_path, "Snapshot file")->required();
  exp->add_option("--kind", kind, "surface or contour")->check(CLI::IsMember({"surface", "contour"}));
  exp->add_option("--levels", levels, "Comma-separated contour levels");
  exp->add_option("--out", out_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  }
  const Encoding encoding = raw ? Encoding::raw : Encoding::text;

  return dispatch_errors([&] {
    if (gen->parsed()) {
      ScenarioConfig cfg = load_config(config_path);
      if (gen->count("--seed"))
        cfg.field.seed = seed;
      const FieldSpec spec = effective_field_spec(cfg);
      const ScalarField k = generate_field(spec);
      ensure_dir(out_dir);
      SnapshotHeader h;
      h.kind = FieldKind::permeability;
      h.config_hash = config_hash(cfg);
      h.encoding = encoding;
      write_snapshot(fs::path(out_dir) / "permeability.snap", {h, k});
      const FieldStatistics st = field_statistics(k);
      std::printf("permeability %dx%d mean %.6g cv %.6g min %.6g max %.6g\n", spec.nx, spec.ny,
                  st.mean, st.cv, st.min, st.max);
    } else if (runc->parsed()) {
      ScenarioConfig cfg = load_config(config_path);
      if (!scheme.empty())
        cfg.scheme = scheme == "nt" ? Scheme::nt : Scheme::kt;
      if (runc->count("--seed"))
        cfg.field.seed = seed;
      if (!snapshot_days.empty())
        cfg.snapshot_days = parse_levels(snapshot_days);
      cfg.validate();
      const std::uint64_t hash = config_hash(cfg);
      const RunResult r = run(cfg);
      ensure_dir(out_dir);
      for (const auto& s : r.snapshots) {
        SnapshotHeader h;
        h.time_days = s.time_days;
        h.scheme = to_string(cfg.scheme);
        h.config_hash = hash;
        h.encoding = encoding;
        const fs::path p = fs::path(out_dir) /
                           ("saturation_" + h.scheme + "_" + day_tag(s.requested_days) + ".snap");
        write_snapshot(p, {h, s.saturation});
        std::printf("%s t=%.6g days\n", p.string().c_str(), s.time_days);
      }
      std::ofstream rep(fs::path(out_dir) / "report.json");
      if (!rep)
        throw IoError("cannot write report.json");
      rep << report_json(cfg, r, hash).dump(2) << "\n";
      std::printf("steps %ld pressure solves %ld wall %.3fs saturation [%.6g, %.6g]\n",
                  r.report.micro_steps, r.report.pressure_solves, r.report.wall_seconds,
                  r.report.min_saturation, r.report.max_saturation);
    } else if (cmp->parsed()) {
      const SnapshotFile kt = read_snapshot(fs::path(kt_path));
      std::vector<SnapshotFile> nt;
      for (const auto& p : nt_paths)
        nt.push_back(read_snapshot(fs::path(p)));
      const ComparisonReport rep = compare_refinement_study(kt, nt);
      nlohmann::json j;
      j["reference"] = rep.reference_label;
      j["strictly_decreasing"] = rep.strictly_decreasing();
      for (const auto& e : rep.entries) {
        j["entries"].push_back(
            {{"label", e.label}, {"refinement", e.refinement}, {"difference", e.difference}});
        std::printf("%-6s x%-3d %.6e\n", e.label.c_str(), e.refinement, e.difference);
      }
      std::printf("reference %s, strictly decreasing: %s\n", rep.reference_label.c_str(),
                  rep.strictly_decreasing() ? "yes" : "no");
      if (cmp->count("--out")) {
        ensure_dir(out_dir);
        std::ofstream o(fs::path(out_dir) / "comparison.json");
        if (!o)
          throw IoError("cannot write comparison.json");
        o << j.dump(2) << "\n";
      }
    } else if (exp->parsed()) {
      const SnapshotFile s = read_snapshot(fs::path(snap_path));
      ensure_dir(out_dir);
      const std::string stem = fs::path(snap_path).stem().string();
      if (kind == "surface") {
        const fs::path p = fs::path(out_dir) / (stem + ".surface.txt");
        std::ofstream o(p);
        if (!o)
          throw IoError("cannot write " + p.string());
        write_surface(o, s.field);
        std::printf("%s\n", p.string().c_str());
      } else {
        const std::vector<double> lv = parse_levels(levels);
        if (lv.empty())
          throw ConfigError("contour export needs --levels");
        const fs::path p = fs::path(out_dir) / (stem + ".contours.txt");
        std::ofstream o(p);
        if (!o)
          throw IoError("cannot write " + p.string());
        write_contours(o, s.field, lv);
        std::printf("%s\n", p.string().c_str());
      }
    }
  });
}
