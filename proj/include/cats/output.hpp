#pragma once

// Deterministic run outputs: the per-sample CSV time series, CATS1 field
// snapshots and a JSON run manifest. Numbers are written in shortest
// round-trip decimal form so every value reads back bit-exactly.

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cats/solver.hpp"

namespace cats {

std::string format_double(double x);
// Throws BadValue on anything but a complete finite decimal.
double parse_double(std::string_view token);

inline constexpr std::string_view kTimeseriesHeader =
    "t,dist_u,dist_v,dist_w,dist_z,energy,mass_u,mass_v,mass_w,sup_v,sup_w";

// One row per sample; absent distances or energies are empty cells.
std::string format_timeseries(const Trajectory& traj);
// Throws IoFailure with the path.
void write_timeseries(const Trajectory& traj, const std::filesystem::path& path);
// Reads a file written by write_timeseries back into samples.
std::vector<Sample> parse_timeseries(std::string_view text);

struct Snapshot {
  int ndim = 1;
  std::vector<std::size_t> dims;
  double h = 1.0;
  double t = 0.0;
  char field = 'u';
  std::vector<double> values;

  // Rebuilds the field on a grid with the given origin on every axis.
  Field to_field(double origin = 0.0) const;

  bool operator==(const Snapshot&) const = default;
};

Snapshot make_snapshot(const State& state, FieldName name);

// Header "CATS1 <ndim> <dims...> <h> <t> <field>", then one line per run of
// the last axis.
std::string format_snapshot(const Snapshot& snap);
Snapshot parse_snapshot(std::string_view text);

void write_snapshot(const State& state, FieldName name,
                    const std::filesystem::path& path);
Snapshot read_snapshot(const std::filesystem::path& path);

struct ManifestEntry {
  std::string path;
  std::string kind;  // timeseries | snapshot | report
};

std::string_view tool_version() noexcept;

// Echoes the resolved configuration (with the step sizes actually used) and
// the written outputs. Contains no timestamps.
std::string format_manifest(const SimConfig& cfg, const Trajectory& traj,
                            const std::vector<ManifestEntry>& outputs);
void write_manifest(const SimConfig& cfg, const Trajectory& traj,
                    const std::vector<ManifestEntry>& outputs,
                    const std::filesystem::path& path);

// Writes timeseries.csv, u/v/w/z.cats1 and, last, manifest.json into dir.
// Returns the manifest entries.
std::vector<ManifestEntry> write_run_outputs(const SimConfig& cfg,
                                             const Trajectory& traj,
                                             const std::filesystem::path& dir);

}  // namespace cats
