#include "crowdflow/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "crowdflow/version.hpp"

namespace crowdflow {

namespace {

auto fmt(double v) -> std::string {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

auto open_for_write(const std::string& path) -> std::ofstream {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  return out;
}

void finish_write(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

auto parse_double(const std::string& token, const std::string& path, std::size_t line)
    -> double {
  const char* begin = token.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    throw std::runtime_error("bad number '" + token + "' in " + path + " line " +
                             std::to_string(line));
  return v;
}

auto split_csv(const std::string& line) -> std::vector<std::string> {
  std::vector<std::string> out;
  std::string token;
  std::istringstream in(line);
  while (std::getline(in, token, ',')) out.push_back(token);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

void write_snapshot_csv(const Snapshot& snap, const Grid1D& grid,
                        const std::string& path) {
  const std::size_t n = grid.n_cells;
  if (snap.rho.size() != n || snap.u.size() != n || snap.rho_star.size() != n ||
      snap.pi.size() != n)
    throw std::invalid_argument("snapshot does not match grid");
  auto out = open_for_write(path);
  out << kSnapshotHeader << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    const double Z = snap.rho[i] / snap.rho_star[i];
    out << fmt(grid.cell_center(i)) << ',' << fmt(snap.rho[i]) << ',' << fmt(snap.u[i])
        << ',' << fmt(snap.rho_star[i]) << ',' << fmt(snap.pi[i]) << ',' << fmt(Z)
        << '\n';
  }
  finish_write(out, path);
}

auto read_snapshot_csv(const std::string& path) -> std::pair<Field, Snapshot> {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line != kSnapshotHeader)
    throw std::runtime_error("'" + path + "' is not a snapshot file");
  Field x;
  Snapshot snap;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto tokens = split_csv(line);
    if (tokens.size() != 6)
      throw std::runtime_error("expected 6 columns in " + path + " line " +
                               std::to_string(line_no));
    x.push_back(parse_double(tokens[0], path, line_no));
    snap.rho.push_back(parse_double(tokens[1], path, line_no));
    snap.u.push_back(parse_double(tokens[2], path, line_no));
    snap.rho_star.push_back(parse_double(tokens[3], path, line_no));
    snap.pi.push_back(parse_double(tokens[4], path, line_no));
    parse_double(tokens[5], path, line_no);  // Z is derived; parsed only to validate
  }
  if (x.empty()) throw std::runtime_error("'" + path + "' has no data rows");
  return {std::move(x), std::move(snap)};
}

void write_diagnostics_csv(const std::vector<DiagnosticsRecord>& records,
                           const std::string& path) {
  auto out = open_for_write(path);
  out << kDiagnosticsHeader << '\n';
  for (const auto& r : records) {
    out << fmt(r.time) << ',' << fmt(r.total_mass) << ',' << fmt(r.total_energy) << ','
        << fmt(r.max_Z) << ',' << fmt(r.rho_star_min) << ',' << fmt(r.rho_star_max)
        << ',' << r.newton_iterations << ',' << fmt(r.max_wave_speed) << ','
        << (r.cfl_ok ? 1 : 0) << '\n';
  }
  finish_write(out, path);
}

void write_manifest(const RunConfig& config, const Provenance& provenance,
                    const std::string& path) {
  nlohmann::ordered_json j;
  j["version"] = kVersion;
  j["scenario"] = scenario_name(config.scenario.kind);
  j["n_cells"] = config.n_cells;
  j["length"] = config.length;
  j["boundary"] = to_string(config.boundary);
  j["dt"] = config.dt;
  j["t_end"] = config.t_end;
  j["epsilon"] = config.params.epsilon;
  j["alpha"] = config.params.alpha;
  j["beta"] = config.params.beta;
  j["gamma"] = config.params.gamma;
  j["mu"] = config.mu;
  j["sigma"] = config.sigma;
  j["newton_tolerance"] = config.newton.tolerance;
  j["newton_max_iterations"] = config.newton.max_iterations;
  j["newton_fd_step"] = config.newton.fd_step;
  j["newton_damping"] = config.newton.damping;
  j["snapshot_times"] = config.snapshot_times.empty()
                            ? std::vector<double>{config.t_end}
                            : config.snapshot_times;
  j["velocity_floor"] = config.velocity_floor;
  j["cfl_policy"] = to_string(config.cfl_policy);
  j["provenance"] = nlohmann::ordered_json::object();
  for (const auto& [key, origin] : provenance) j["provenance"][key] = origin;

  auto out = open_for_write(path);
  out << j.dump(2) << '\n';
  finish_write(out, path);
}

auto snapshot_filename(double time) -> std::string {
  char buf[48];
  std::snprintf(buf, sizeof buf, "snapshot_t%.4f.csv", time);
  return buf;
}

auto epsilon_tag(double epsilon) -> std::string {
  char buf[32];
  std::snprintf(buf, sizeof buf, "eps%.1e", epsilon);
  return buf;
}

}  // namespace crowdflow
