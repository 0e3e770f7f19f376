#pragma once

#include <functional>
#include <string>
#include <vector>

#include "crowdflow/grid.hpp"

namespace crowdflow {

enum class ScenarioKind { Case1, Case2, Case3, Case4, Custom };

/// Initial-profile triple; the named cases carry their own closed-form profiles and
/// the functions are only consulted for Custom.
struct Scenario {
  ScenarioKind kind = ScenarioKind::Case1;
  std::function<double(double)> rho0;
  std::function<double(double)> u0;
  std::function<double(double)> rho_star0;
};

auto scenario_from_name(const std::string&) -> Scenario;
auto scenario_name(ScenarioKind) -> std::string;
auto scenario_names() -> std::vector<std::string>;
auto scenario_description(ScenarioKind) -> std::string;

auto make_custom_scenario(std::function<double(double)> rho0,
                          std::function<double(double)> u0,
                          std::function<double(double)> rho_star0) -> Scenario;

// Closed-form initial profiles, exposed for tests.
double case1_rho(double x);
double case1_u(double x);
double case1_rho_star(double x);
double case2_rho(double x);
double case2_u(double x);
double case2_rho_star(double x);
double case3_rho(double x);
double case3_u(double x);
double case3_rho_star(double x);
double case4_rho(double x);
double case4_u(double x);
double case4_rho_star(double x);

/// Samples the profiles at cell centers (momentum = rho0 u0) and validates the
/// result, so 0 <= rho0 < rho_star0 must hold at every center.
auto initialize(const Scenario&, const Grid1D&) -> FlowState;

/// End time and snapshot times the command line uses for each named case.
double default_t_end(ScenarioKind);
auto default_snapshot_times(ScenarioKind) -> std::vector<double>;

}  // namespace crowdflow
