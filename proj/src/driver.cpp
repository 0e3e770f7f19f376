#include "crowdflow/driver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <utility>

#include "crowdflow/congestion_transport.hpp"
#include "crowdflow/diffusion_step.hpp"
#include "crowdflow/errors.hpp"

namespace crowdflow {

auto to_string(RunStatus status) -> std::string {
  switch (status) {
    case RunStatus::Completed: return "completed";
    case RunStatus::CflViolation: return "cfl_violation";
    case RunStatus::NewtonFailure: return "newton_failure";
  }
  throw std::logic_error("unreachable run status");
}

auto to_string(CflPolicy policy) -> std::string {
  return policy == CflPolicy::Abort ? "abort" : "warn";
}

auto cfl_policy_from_string(const std::string& name) -> CflPolicy {
  if (name == "abort") return CflPolicy::Abort;
  if (name == "warn") return CflPolicy::Warn;
  throw std::invalid_argument("unknown cfl policy '" + name + "'; use abort or warn");
}

namespace {

bool energy_defined(const PressureParams& p) { return p.alpha >= 2.0 && p.gamma >= 2.0; }

void fill_observables(DiagnosticsRecord& rec, const FlowState& state,
                      const Grid1D& grid, const RunConfig& config) {
  rec.time = state.time;
  rec.total_mass = total_mass(state, grid);
  rec.total_energy =
      energy_defined(config.params)
          ? discrete_energy(state, grid, config.params, config.velocity_floor)
          : std::numeric_limits<double>::quiet_NaN();
  rec.max_Z = constraint_report(state).max_Z;
  const auto [lo, hi] =
      std::minmax_element(state.rho_star.begin(), state.rho_star.end());
  rec.rho_star_min = *lo;
  rec.rho_star_max = *hi;
}

// congestion pressure consistent with the fields at rest: cell-local inversion
auto pointwise_pressure(const FlowState& state, const PressureParams& params) -> Field {
  Field pi(state.rho.size());
  for (std::size_t i = 0; i < pi.size(); ++i)
    pi[i] = singular_pressure(state.rho[i] / state.rho_star[i], params);
  return pi;
}

}  // namespace

auto step(const FlowState& state, const RunConfig& config, const Grid1D& grid,
          const Field* pi_prev) -> StepResult {
  validate_state(state, grid);
  const double dt = config.dt;
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");

  DiagnosticsRecord rec;
  const double speed = max_wave_speed(state, config.params, config.velocity_floor);
  rec.max_wave_speed = speed;
  rec.cfl_ok = cfl_satisfied(speed, dt, grid.dx, config.sigma);
  if (!rec.cfl_ok && config.cfl_policy == CflPolicy::Abort) {
    const double bound = config.sigma * grid.dx / dt;
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "cfl violation at t = %.6g: wave speed %.6g exceeds %.6g",
                  state.time, speed, bound);
    throw CflViolation(msg, speed, bound, state.time);
  }

  HyperbolicResult hyp = hyperbolic_step(state, config.params, dt, grid,
                                         config.newton, pi_prev,
                                         config.velocity_floor);

  Field u_star(grid.n_cells);
  for (std::size_t i = 0; i < grid.n_cells; ++i)
    u_star[i] = hyp.momentum_star[i] / std::max(hyp.rho_new[i], config.velocity_floor);
  const Field u_new = solve_diffusion(hyp.rho_new, u_star, config.mu, dt, grid);

  StepResult out;
  out.state.time = state.time + dt;
  out.state.rho = std::move(hyp.rho_new);
  out.state.momentum.resize(grid.n_cells);
  for (std::size_t i = 0; i < grid.n_cells; ++i)
    out.state.momentum[i] = out.state.rho[i] * u_new[i];
  out.state.rho_star = transport_rho_star(state.rho_star, u_new, dt, grid);
  validate_state(out.state, grid);

  fill_observables(rec, out.state, grid, config);
  rec.newton_iterations = hyp.newton_iterations;
  out.record = rec;
  out.pi = std::move(hyp.pi);
  return out;
}

auto run(const RunConfig& config) -> RunResult {
  const Grid1D grid = make_uniform_grid(config.n_cells, config.length, config.boundary);
  if (!(config.dt > 0.0)) throw std::invalid_argument("run: dt must be positive");
  if (!(config.t_end >= 0.0) || !std::isfinite(config.t_end))
    throw std::invalid_argument("run: t_end must be nonnegative");
  validate(config.params);

  FlowState state = initialize(config.scenario, grid);

  const long long n_steps = std::llround(config.t_end / config.dt);
  const std::vector<double> requested = config.snapshot_times.empty()
                                            ? std::vector<double>{config.t_end}
                                            : config.snapshot_times;
  std::vector<long long> snap_steps;
  for (double t : requested) {
    if (!(t >= 0.0) || !std::isfinite(t))
      throw std::invalid_argument("run: snapshot times must be nonnegative");
    snap_steps.push_back(std::clamp(std::llround(t / config.dt), 0LL, n_steps));
  }
  std::sort(snap_steps.begin(), snap_steps.end());
  snap_steps.erase(std::unique(snap_steps.begin(), snap_steps.end()),
                   snap_steps.end());

  RunResult result;
  auto push_snapshot = [&](const FlowState& st, const Field& pi) {
    Snapshot snap;
    snap.time = st.time;
    snap.rho = st.rho;
    snap.u = velocity(st, config.velocity_floor);
    snap.rho_star = st.rho_star;
    snap.pi = pi;
    result.snapshots.push_back(std::move(snap));
  };

  Field pi_prev = pointwise_pressure(state, config.params);

  DiagnosticsRecord first;
  first.max_wave_speed = max_wave_speed(state, config.params, config.velocity_floor);
  first.cfl_ok = cfl_satisfied(first.max_wave_speed, config.dt, grid.dx, config.sigma);
  fill_observables(first, state, grid, config);
  result.diagnostics.push_back(first);
  if (std::binary_search(snap_steps.begin(), snap_steps.end(), 0LL))
    push_snapshot(state, pi_prev);

  try {
    for (long long k = 1; k <= n_steps; ++k) {
      StepResult sr = step(state, config, grid, &pi_prev);
      state = std::move(sr.state);
      pi_prev = std::move(sr.pi);
      state.time = static_cast<double>(k) * config.dt;  // well-conditioned clock
      sr.record.time = state.time;
      result.diagnostics.push_back(sr.record);
      if (std::binary_search(snap_steps.begin(), snap_steps.end(), k))
        push_snapshot(state, pi_prev);
    }
  } catch (const NewtonFailure& e) {
    result.status = RunStatus::NewtonFailure;
    result.message = e.what();
  } catch (const CflViolation& e) {
    result.status = RunStatus::CflViolation;
    result.message = e.what();
  }
  return result;
}

auto run_epsilon_sweep(const RunConfig& config, const std::vector<double>& epsilons)
    -> std::vector<RunResult> {
  if (epsilons.empty()) throw std::invalid_argument("sweep: needs at least one epsilon");
  std::vector<RunResult> results;
  results.reserve(epsilons.size());
  for (double eps : epsilons) {
    if (!(eps > 0.0) || !std::isfinite(eps))
      throw std::invalid_argument("sweep: epsilon must be positive");
    RunConfig member = config;
    member.params.epsilon = eps;
    results.push_back(run(member));
  }
  return results;
}

}  // namespace crowdflow
