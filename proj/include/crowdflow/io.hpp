#pragma once

#include <map>
#include <string>
#include <utility>

#include "crowdflow/driver.hpp"

namespace crowdflow {

inline constexpr const char* kSnapshotHeader = "x,rho,u,rho_star,pi,Z";
inline constexpr const char* kDiagnosticsHeader =
    "time,total_mass,total_energy,max_Z,rho_star_min,rho_star_max,"
    "newton_iterations,max_wave_speed,cfl_ok";

/// Where each resolved config value came from ("default", "file", "flag", "sweep").
using Provenance = std::map<std::string, std::string>;

/// CSV at 17 significant digits; columns per kSnapshotHeader, one row per cell.
void write_snapshot_csv(const Snapshot&, const Grid1D&, const std::string& path);

/// Parses a snapshot CSV back; returns the x column alongside the fields.
auto read_snapshot_csv(const std::string& path) -> std::pair<Field, Snapshot>;

void write_diagnostics_csv(const std::vector<DiagnosticsRecord>&,
                           const std::string& path);

/// Resolved config, per-value provenance and code version as indented JSON.
void write_manifest(const RunConfig&, const Provenance&, const std::string& path);

auto snapshot_filename(double time) -> std::string;  // snapshot_t0.0500.csv
auto epsilon_tag(double epsilon) -> std::string;     // eps1.0e-04

}  // namespace crowdflow
