#include "crowdflow/scenarios.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace crowdflow {

namespace {

bool in_open(double x, double a, double b) { return x > a && x < b; }

}  // namespace

double case1_rho(double) { return 0.7; }
double case1_u(double x) { return in_open(x, 0.2, 0.6) ? 0.8 : -0.8; }
double case1_rho_star(double) { return 1.0; }

double case2_rho(double) { return 0.7; }
double case2_u(double x) {
  if (in_open(x, 0.25, 0.5)) return 0.8;
  if (in_open(x, 0.5, 0.75)) return -0.8;
  return 0.0;
}
double case2_rho_star(double x) {
  return 0.8 + 0.15 * (std::tanh(50.0 * (x - 0.4)) - std::tanh(50.0 * (x - 0.6)));
}

double case3_rho(double x) { return in_open(x, 0.3, 0.7) ? 0.8 : 0.1; }
double case3_u(double x) { return in_open(x, 0.1, 0.7) ? 0.8 : 0.0; }
double case3_rho_star(double x) {
  return 0.34 + 0.3 * (std::tanh(50.0 * (x - 0.275)) - std::tanh(50.0 * (x - 0.725)));
}

double case4_rho(double) { return 0.6; }
double case4_u(double x) { return in_open(x, 0.3, 0.7) ? 0.8 : -0.8; }
double case4_rho_star(double x) {
  const double pi = std::numbers::pi;
  return 0.9 + 0.05 * (std::cos(10.0 * pi * x) - std::cos(6.0 * pi * x) +
                       std::cos(134.0 * pi * x) + std::cos(24.0 * pi * x));
}

auto scenario_name(ScenarioKind kind) -> std::string {
  switch (kind) {
    case ScenarioKind::Case1: return "case1";
    case ScenarioKind::Case2: return "case2";
    case ScenarioKind::Case3: return "case3";
    case ScenarioKind::Case4: return "case4";
    case ScenarioKind::Custom: return "custom";
  }
  throw std::logic_error("unreachable scenario kind");
}

auto scenario_names() -> std::vector<std::string> {
  return {"case1", "case2", "case3", "case4"};
}

auto scenario_description(ScenarioKind kind) -> std::string {
  switch (kind) {
    case ScenarioKind::Case1:
      return "uniform crowd, colliding fronts, constant congestion ceiling";
    case ScenarioKind::Case2:
      return "uniform crowd, colliding fronts, raised congestion plateau";
    case ScenarioKind::Case3:
      return "dense block pushed into a corridor with a low ceiling outside";
    case ScenarioKind::Case4:
      return "colliding fronts under an oscillatory congestion ceiling";
    case ScenarioKind::Custom:
      return "user-supplied initial profiles";
  }
  throw std::logic_error("unreachable scenario kind");
}

auto scenario_from_name(const std::string& name) -> Scenario {
  Scenario s;
  if (name == "case1") {
    s.kind = ScenarioKind::Case1;
    s.rho0 = case1_rho;
    s.u0 = case1_u;
    s.rho_star0 = case1_rho_star;
  } else if (name == "case2") {
    s.kind = ScenarioKind::Case2;
    s.rho0 = case2_rho;
    s.u0 = case2_u;
    s.rho_star0 = case2_rho_star;
  } else if (name == "case3") {
    s.kind = ScenarioKind::Case3;
    s.rho0 = case3_rho;
    s.u0 = case3_u;
    s.rho_star0 = case3_rho_star;
  } else if (name == "case4") {
    s.kind = ScenarioKind::Case4;
    s.rho0 = case4_rho;
    s.u0 = case4_u;
    s.rho_star0 = case4_rho_star;
  } else {
    std::string msg = "unknown scenario '" + name + "'; valid names:";
    for (const auto& n : scenario_names()) msg += " " + n;
    throw std::invalid_argument(msg);
  }
  return s;
}

auto make_custom_scenario(std::function<double(double)> rho0,
                          std::function<double(double)> u0,
                          std::function<double(double)> rho_star0) -> Scenario {
  if (!rho0 || !u0 || !rho_star0)
    throw std::invalid_argument("custom scenario needs all three profiles");
  Scenario s;
  s.kind = ScenarioKind::Custom;
  s.rho0 = std::move(rho0);
  s.u0 = std::move(u0);
  s.rho_star0 = std::move(rho_star0);
  return s;
}

auto initialize(const Scenario& scenario, const Grid1D& grid) -> FlowState {
  if (!scenario.rho0 || !scenario.u0 || !scenario.rho_star0)
    throw std::invalid_argument("scenario profiles are not set");
  FlowState state;
  state.time = 0.0;
  state.rho.resize(grid.n_cells);
  state.momentum.resize(grid.n_cells);
  state.rho_star.resize(grid.n_cells);
  for (std::size_t i = 0; i < grid.n_cells; ++i) {
    const double x = grid.cell_center(i);
    state.rho[i] = scenario.rho0(x);
    state.momentum[i] = state.rho[i] * scenario.u0(x);
    state.rho_star[i] = scenario.rho_star0(x);
  }
  validate_state(state, grid);
  return state;
}

double default_t_end(ScenarioKind kind) {
  return kind == ScenarioKind::Case4 ? 0.5 : 0.1;
}

auto default_snapshot_times(ScenarioKind kind) -> std::vector<double> {
  if (kind == ScenarioKind::Case4) return {0.0, 0.1, 0.25, 0.5};
  return {0.0, 0.05, 0.1};
}

}  // namespace crowdflow
