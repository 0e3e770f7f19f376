#include "crowdflow/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>

#include <CLI11.hpp>
#include <json.hpp>

namespace crowdflow {

namespace {

using nlohmann::json;

struct RawArgs {
  std::string scenario;
  std::string config_path;
  std::string boundary;
  std::string cfl_policy;
  std::string snapshots;
  std::string epsilons;
  std::string output;
  double epsilon = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma_exp = 0.0;
  double mu = 0.0;
  double sigma = 0.0;
  double dt = 0.0;
  double t_end = 0.0;
  double length = 0.0;
  double newton_tol = 0.0;
  double newton_fd_step = 0.0;
  double newton_damping = 0.0;
  double velocity_floor = 0.0;
  std::size_t n_cells = 0;
  int newton_max_iters = 0;

  CLI::Option* o_scenario = nullptr;
  CLI::Option* o_config = nullptr;
  CLI::Option* o_boundary = nullptr;
  CLI::Option* o_cfl_policy = nullptr;
  CLI::Option* o_snapshots = nullptr;
  CLI::Option* o_epsilon = nullptr;
  CLI::Option* o_alpha = nullptr;
  CLI::Option* o_beta = nullptr;
  CLI::Option* o_gamma = nullptr;
  CLI::Option* o_mu = nullptr;
  CLI::Option* o_sigma = nullptr;
  CLI::Option* o_dt = nullptr;
  CLI::Option* o_t_end = nullptr;
  CLI::Option* o_length = nullptr;
  CLI::Option* o_newton_tol = nullptr;
  CLI::Option* o_newton_fd_step = nullptr;
  CLI::Option* o_newton_damping = nullptr;
  CLI::Option* o_newton_max_iters = nullptr;
  CLI::Option* o_velocity_floor = nullptr;
  CLI::Option* o_n_cells = nullptr;
};

void add_common_options(CLI::App* sub, RawArgs& raw) {
  raw.o_scenario = sub->add_option("scenario", raw.scenario,
                                   "scenario name (see list-scenarios)");
  raw.o_config = sub->add_option("--config", raw.config_path, "flat json config file");
  raw.o_n_cells = sub->add_option("--n-cells", raw.n_cells, "number of cells");
  raw.o_length = sub->add_option("--length", raw.length, "domain length");
  raw.o_boundary =
      sub->add_option("--boundary", raw.boundary, "periodic or dirichlet");
  raw.o_dt = sub->add_option("--dt", raw.dt, "time step");
  raw.o_t_end = sub->add_option("--t-end", raw.t_end, "final time");
  raw.o_alpha = sub->add_option("--alpha", raw.alpha, "congestion law numerator exponent");
  raw.o_beta = sub->add_option("--beta", raw.beta, "congestion law pole exponent");
  raw.o_gamma = sub->add_option("--gamma", raw.gamma_exp, "background pressure exponent");
  raw.o_mu = sub->add_option("--mu", raw.mu, "velocity diffusion coefficient");
  raw.o_sigma = sub->add_option("--sigma", raw.sigma, "monitored courant fraction");
  raw.o_snapshots = sub->add_option("--snapshots", raw.snapshots,
                                    "comma-separated snapshot times");
  raw.o_newton_tol =
      sub->add_option("--newton-tol", raw.newton_tol, "pressure solve tolerance");
  raw.o_newton_max_iters = sub->add_option("--newton-max-iters", raw.newton_max_iters,
                                           "pressure solve iteration cap");
  raw.o_newton_fd_step = sub->add_option("--newton-fd-step", raw.newton_fd_step,
                                         "jacobian probe step");
  raw.o_newton_damping = sub->add_option("--newton-damping", raw.newton_damping,
                                         "first line-search fraction");
  raw.o_velocity_floor = sub->add_option("--velocity-floor", raw.velocity_floor,
                                         "density floor for m/rho");
  raw.o_cfl_policy =
      sub->add_option("--cfl-policy", raw.cfl_policy, "abort or warn");
  sub->add_option("--output", raw.output, "output directory (default: out)");
}

auto parse_double_list(const std::string& text, const std::string& what)
    -> std::vector<double> {
  std::vector<double> values;
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    if (token.empty())
      throw UsageError(what + ": empty entry in '" + text + "'");
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0')
      throw UsageError(what + ": bad number '" + token + "'");
    values.push_back(v);
  }
  if (values.empty()) throw UsageError(what + ": no values given");
  return values;
}

const std::set<std::string> kConfigKeys = {
    "scenario",        "n_cells",
    "length",          "boundary",
    "dt",              "t_end",
    "epsilon",         "alpha",
    "beta",            "gamma",
    "mu",              "sigma",
    "newton_tolerance", "newton_max_iterations",
    "newton_fd_step",  "newton_damping",
    "snapshot_times",  "velocity_floor",
    "cfl_policy"};

auto load_config_file(const std::string& path) -> json {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw UsageError("config file '" + path + "': " + e.what());
  }
  if (!j.is_object())
    throw UsageError("config file '" + path + "' must hold a json object");
  for (const auto& [key, value] : j.items())
    if (!kConfigKeys.count(key))
      throw UsageError("config file '" + path + "': unknown key '" + key + "'");
  return j;
}

double file_number(const json& j, const char* key) {
  if (!j.at(key).is_number())
    throw UsageError(std::string("config key '") + key + "' must be a number");
  return j.at(key).get<double>();
}

auto file_string(const json& j, const char* key) -> std::string {
  if (!j.at(key).is_string())
    throw UsageError(std::string("config key '") + key + "' must be a string");
  return j.at(key).get<std::string>();
}

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

auto resolve(const RawArgs& raw, bool is_sweep) -> CliInvocation {
  json file;
  const bool have_file = raw.o_config->count() > 0;
  if (have_file) file = load_config_file(raw.config_path);
  const auto file_has = [&](const char* key) { return have_file && file.contains(key); };

  // the scenario must be settled first: it owns the t_end / snapshot defaults
  std::string scenario_name;
  std::string scenario_origin = "default";
  if (file_has("scenario")) {
    scenario_name = file_string(file, "scenario");
    scenario_origin = "file";
  }
  if (raw.o_scenario->count() > 0) {
    scenario_name = raw.scenario;
    scenario_origin = "flag";
  }
  require(!scenario_name.empty(),
          "no scenario given (positional argument or config-file key)");

  CliInvocation inv;
  inv.command = is_sweep ? CliCommand::Sweep : CliCommand::Run;
  try {
    inv.config.scenario = scenario_from_name(scenario_name);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  inv.config.t_end = default_t_end(inv.config.scenario.kind);
  inv.config.snapshot_times = default_snapshot_times(inv.config.scenario.kind);
  inv.provenance["scenario"] = scenario_origin;

  const auto layer_double = [&](const char* key, const CLI::Option* opt,
                                double flag_value, double& target) {
    inv.provenance[key] = "default";
    if (file_has(key)) {
      target = file_number(file, key);
      inv.provenance[key] = "file";
    }
    if (opt->count() > 0) {
      target = flag_value;
      inv.provenance[key] = "flag";
    }
  };

  layer_double("length", raw.o_length, raw.length, inv.config.length);
  layer_double("dt", raw.o_dt, raw.dt, inv.config.dt);
  layer_double("t_end", raw.o_t_end, raw.t_end, inv.config.t_end);
  inv.provenance["epsilon"] = "default";
  if (file_has("epsilon")) {
    inv.config.params.epsilon = file_number(file, "epsilon");
    inv.provenance["epsilon"] = "file";
  }
  if (raw.o_epsilon && raw.o_epsilon->count() > 0) {  // sweep has no --epsilon flag
    inv.config.params.epsilon = raw.epsilon;
    inv.provenance["epsilon"] = "flag";
  }
  layer_double("alpha", raw.o_alpha, raw.alpha, inv.config.params.alpha);
  layer_double("beta", raw.o_beta, raw.beta, inv.config.params.beta);
  layer_double("gamma", raw.o_gamma, raw.gamma_exp, inv.config.params.gamma);
  layer_double("mu", raw.o_mu, raw.mu, inv.config.mu);
  layer_double("sigma", raw.o_sigma, raw.sigma, inv.config.sigma);
  layer_double("newton_tolerance", raw.o_newton_tol, raw.newton_tol,
               inv.config.newton.tolerance);
  layer_double("newton_fd_step", raw.o_newton_fd_step, raw.newton_fd_step,
               inv.config.newton.fd_step);
  layer_double("newton_damping", raw.o_newton_damping, raw.newton_damping,
               inv.config.newton.damping);
  layer_double("velocity_floor", raw.o_velocity_floor, raw.velocity_floor,
               inv.config.velocity_floor);

  inv.provenance["n_cells"] = "default";
  if (file_has("n_cells")) {
    if (!file.at("n_cells").is_number_unsigned())
      throw UsageError("config key 'n_cells' must be a nonnegative integer");
    inv.config.n_cells = file.at("n_cells").get<std::size_t>();
    inv.provenance["n_cells"] = "file";
  }
  if (raw.o_n_cells->count() > 0) {
    inv.config.n_cells = raw.n_cells;
    inv.provenance["n_cells"] = "flag";
  }

  inv.provenance["newton_max_iterations"] = "default";
  if (file_has("newton_max_iterations")) {
    if (!file.at("newton_max_iterations").is_number_integer())
      throw UsageError("config key 'newton_max_iterations' must be an integer");
    inv.config.newton.max_iterations = file.at("newton_max_iterations").get<int>();
    inv.provenance["newton_max_iterations"] = "file";
  }
  if (raw.o_newton_max_iters->count() > 0) {
    inv.config.newton.max_iterations = raw.newton_max_iters;
    inv.provenance["newton_max_iterations"] = "flag";
  }

  inv.provenance["boundary"] = "default";
  std::string boundary_name;
  if (file_has("boundary")) {
    boundary_name = file_string(file, "boundary");
    inv.provenance["boundary"] = "file";
  }
  if (raw.o_boundary->count() > 0) {
    boundary_name = raw.boundary;
    inv.provenance["boundary"] = "flag";
  }
  if (!boundary_name.empty()) {
    try {
      inv.config.boundary = boundary_from_string(boundary_name);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }

  inv.provenance["cfl_policy"] = "default";
  std::string policy_name;
  if (file_has("cfl_policy")) {
    policy_name = file_string(file, "cfl_policy");
    inv.provenance["cfl_policy"] = "file";
  }
  if (raw.o_cfl_policy->count() > 0) {
    policy_name = raw.cfl_policy;
    inv.provenance["cfl_policy"] = "flag";
  }
  if (!policy_name.empty()) {
    try {
      inv.config.cfl_policy = cfl_policy_from_string(policy_name);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }

  inv.provenance["snapshot_times"] = "default";
  if (file_has("snapshot_times")) {
    if (!file.at("snapshot_times").is_array())
      throw UsageError("config key 'snapshot_times' must be an array of numbers");
    std::vector<double> times;
    for (const auto& v : file.at("snapshot_times")) {
      if (!v.is_number())
        throw UsageError("config key 'snapshot_times' must be an array of numbers");
      times.push_back(v.get<double>());
    }
    inv.config.snapshot_times = std::move(times);
    inv.provenance["snapshot_times"] = "file";
  }
  if (raw.o_snapshots->count() > 0) {
    inv.config.snapshot_times = parse_double_list(raw.snapshots, "--snapshots");
    inv.provenance["snapshot_times"] = "flag";
  }

  inv.output_dir = raw.output.empty() ? std::string("out") : raw.output;

  // eager validation: every bad value is a usage error, not a solver crash
  require(inv.config.n_cells >= 4, "--n-cells: need at least 4 cells");
  require(inv.config.length > 0.0 && std::isfinite(inv.config.length),
          "--length: must be positive");
  require(inv.config.dt > 0.0 && std::isfinite(inv.config.dt),
          "--dt: must be positive");
  require(inv.config.t_end >= 0.0 && std::isfinite(inv.config.t_end),
          "--t-end: must be nonnegative");
  require(inv.config.mu >= 0.0 && std::isfinite(inv.config.mu),
          "--mu: must be nonnegative");
  require(inv.config.sigma > 0.0 && std::isfinite(inv.config.sigma),
          "--sigma: must be positive");
  require(inv.config.newton.tolerance > 0.0, "--newton-tol: must be positive");
  require(inv.config.newton.max_iterations >= 1,
          "--newton-max-iters: must be at least 1");
  require(inv.config.newton.fd_step > 0.0, "--newton-fd-step: must be positive");
  require(inv.config.newton.damping > 0.0 && inv.config.newton.damping <= 1.0,
          "--newton-damping: must lie in (0, 1]");
  require(inv.config.velocity_floor > 0.0, "--velocity-floor: must be positive");
  for (double t : inv.config.snapshot_times)
    require(t >= 0.0 && std::isfinite(t), "--snapshots: times must be nonnegative");
  try {
    validate(inv.config.params);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  if (is_sweep) {
    inv.sweep_epsilons = parse_double_list(raw.epsilons, "--epsilons");
    for (double eps : inv.sweep_epsilons)
      require(eps > 0.0 && std::isfinite(eps), "--epsilons: values must be positive");
    inv.provenance["epsilon"] = "sweep";
  }
  return inv;
}

auto fmt_csv(double v) -> std::string {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

auto sweep_snapshot_filename(const std::string& tag, double time) -> std::string {
  char buf[48];
  std::snprintf(buf, sizeof buf, "snapshot_%s_t%.4f.csv", tag.c_str(), time);
  return buf;
}

double median_newton_iterations(const std::vector<DiagnosticsRecord>& records) {
  if (records.size() < 2) return 0.0;
  std::vector<int> counts;
  counts.reserve(records.size() - 1);
  for (std::size_t i = 1; i < records.size(); ++i)  // row 0 is the initial state
    counts.push_back(records[i].newton_iterations);
  std::sort(counts.begin(), counts.end());
  const std::size_t k = counts.size();
  if (k % 2 == 1) return counts[k / 2];
  return 0.5 * (counts[k / 2 - 1] + counts[k / 2]);
}

double relative_mass_drift(const std::vector<DiagnosticsRecord>& records) {
  if (records.empty()) return 0.0;
  const double first = records.front().total_mass;
  double worst = 0.0;
  for (const auto& r : records)
    worst = std::max(worst, std::abs(r.total_mass - first));
  return first != 0.0 ? worst / std::abs(first) : worst;
}

int status_code(RunStatus status) {
  switch (status) {
    case RunStatus::Completed: return kExitOk;
    case RunStatus::NewtonFailure: return kExitNewton;
    case RunStatus::CflViolation: return kExitCfl;
  }
  return 1;
}

void write_run_outputs(const RunResult& result, const RunConfig& config,
                       const Provenance& provenance, const Grid1D& grid,
                       const std::string& dir, const std::string& tag,
                       std::ostream& out) {
  const std::string sep = tag.empty() ? "" : "_" + tag;
  for (const auto& snap : result.snapshots) {
    const std::string name = tag.empty() ? snapshot_filename(snap.time)
                                         : sweep_snapshot_filename(tag, snap.time);
    const std::string path = dir + "/" + name;
    write_snapshot_csv(snap, grid, path);
    out << "wrote " << path << "\n";
  }
  const std::string diag_path = dir + "/diagnostics" + sep + ".csv";
  write_diagnostics_csv(result.diagnostics, diag_path);
  out << "wrote " << diag_path << "\n";
  const std::string manifest_path = dir + "/manifest" + sep + ".json";
  write_manifest(config, provenance, manifest_path);
  out << "wrote " << manifest_path << "\n";
}

}  // namespace

auto parse_cli(const std::vector<std::string>& args) -> CliInvocation {
  CLI::App app{"finite-volume simulator for congested two-phase crowd flow"};
  app.name("simulate");
  app.require_subcommand(1);

  RawArgs run_raw;
  RawArgs sweep_raw;
  auto* run_cmd =
      app.add_subcommand("run", "integrate one scenario and write csv outputs");
  add_common_options(run_cmd, run_raw);
  run_raw.o_epsilon =
      run_cmd->add_option("--epsilon", run_raw.epsilon, "congestion stiffness");

  auto* sweep_cmd =
      app.add_subcommand("sweep", "integrate one scenario across several epsilons");
  add_common_options(sweep_cmd, sweep_raw);
  sweep_cmd
      ->add_option("--epsilons", sweep_raw.epsilons,
                   "comma-separated congestion stiffness values")
      ->required();

  auto* list_cmd = app.add_subcommand("list-scenarios", "print the built-in scenarios");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested(app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (list_cmd->parsed()) {
    CliInvocation inv;
    inv.command = CliCommand::ListScenarios;
    return inv;
  }
  if (sweep_cmd->parsed()) return resolve(sweep_raw, true);
  return resolve(run_raw, false);
}

int execute(const CliInvocation& invocation, std::ostream& out) {
  if (invocation.command == CliCommand::ListScenarios) {
    for (const auto& name : scenario_names()) {
      const auto kind = scenario_from_name(name).kind;
      out << name << "  " << scenario_description(kind) << "\n";
    }
    return kExitOk;
  }

  const std::string dir = invocation.output_dir;
  std::filesystem::create_directories(dir);
  const Grid1D grid = make_uniform_grid(invocation.config.n_cells,
                                        invocation.config.length,
                                        invocation.config.boundary);

  if (invocation.command == CliCommand::Run) {
    const RunResult result = run(invocation.config);
    write_run_outputs(result, invocation.config, invocation.provenance, grid, dir, "",
                      out);
    out << "status: " << to_string(result.status) << "\n";
    if (!result.message.empty()) out << result.message << "\n";
    return status_code(result.status);
  }

  // sweep: one output family per epsilon plus a summary table
  const auto results = run_epsilon_sweep(invocation.config, invocation.sweep_epsilons);
  std::ofstream summary(dir + "/sweep_summary.csv");
  if (!summary)
    throw std::runtime_error("cannot open '" + dir + "/sweep_summary.csv' for writing");
  summary << "epsilon,status,final_time,final_max_Z,mass_drift,"
             "median_newton_iterations\n";
  int exit_code = kExitOk;
  for (std::size_t k = 0; k < results.size(); ++k) {
    const double eps = invocation.sweep_epsilons[k];
    const RunResult& result = results[k];
    RunConfig member = invocation.config;
    member.params.epsilon = eps;
    const std::string tag = epsilon_tag(eps);
    write_run_outputs(result, member, invocation.provenance, grid, dir, tag, out);
    out << tag << " status: " << to_string(result.status) << "\n";
    if (!result.message.empty()) out << result.message << "\n";
    const auto& last = result.diagnostics.back();
    summary << fmt_csv(eps) << ',' << to_string(result.status) << ','
            << fmt_csv(last.time) << ',' << fmt_csv(last.max_Z) << ','
            << fmt_csv(relative_mass_drift(result.diagnostics)) << ','
            << fmt_csv(median_newton_iterations(result.diagnostics)) << '\n';
    if (exit_code == kExitOk && result.status != RunStatus::Completed)
      exit_code = status_code(result.status);
  }
  summary.flush();
  if (!summary)
    throw std::runtime_error("write to '" + dir + "/sweep_summary.csv' failed");
  out << "wrote " << dir << "/sweep_summary.csv\n";
  return exit_code;
}

}  // namespace crowdflow
