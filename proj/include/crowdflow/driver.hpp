#pragma once

#include <string>
#include <vector>

#include "crowdflow/diagnostics.hpp"
#include "crowdflow/hyperbolic_step.hpp"
#include "crowdflow/scenarios.hpp"

namespace crowdflow {

enum class RunStatus { Completed, CflViolation, NewtonFailure };
enum class CflPolicy { Abort, Warn };

auto to_string(RunStatus) -> std::string;
auto to_string(CflPolicy) -> std::string;
auto cfl_policy_from_string(const std::string&) -> CflPolicy;

struct RunConfig {
  Scenario scenario;
  std::size_t n_cells = 1000;
  double length = 1.0;
  BoundaryKind boundary = BoundaryKind::Periodic;
  double dt = 1e-4;
  double t_end = 0.1;
  PressureParams params;
  double mu = 1e-3;
  double sigma = 0.5;  // acoustic CFL fraction monitored each step
  NewtonConfig newton;
  std::vector<double> snapshot_times;  // empty means t_end only
  double velocity_floor = kDefaultVelocityFloor;
  CflPolicy cfl_policy = CflPolicy::Abort;
};

struct Snapshot {
  double time = 0.0;
  Field rho;
  Field u;
  Field rho_star;
  Field pi;
};

struct RunResult {
  std::vector<Snapshot> snapshots;
  std::vector<DiagnosticsRecord> diagnostics;
  RunStatus status = RunStatus::Completed;
  std::string message;  // empty on success
};

struct StepResult {
  FlowState state;
  DiagnosticsRecord record;
  Field pi;
};

/// One full splitting step: implicit-pressure hyperbolic update, implicit velocity
/// diffusion on u* = m*/rho, then congestion-density transport with the fresh
/// velocity. pi_prev seeds the Newton iteration when given.
auto step(const FlowState&, const RunConfig&, const Grid1D&,
          const Field* pi_prev = nullptr) -> StepResult;

/// Integrates to t_end (rounded to whole steps), recording diagnostics every step
/// and snapshots at the step nearest each requested time. Newton and CFL failures
/// land in the returned status instead of propagating.
auto run(const RunConfig&) -> RunResult;

/// run() once per epsilon, all other settings shared. Failures stay per-member.
auto run_epsilon_sweep(const RunConfig&, const std::vector<double>& epsilons)
    -> std::vector<RunResult>;

}  // namespace crowdflow
