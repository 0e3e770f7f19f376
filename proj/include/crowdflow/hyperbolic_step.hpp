#pragma once

#include <vector>

#include "crowdflow/grid.hpp"
#include "crowdflow/pressure_laws.hpp"

namespace crowdflow {

struct NewtonConfig {
  double tolerance = 1e-10;  // sup-norm residual target
  int max_iterations = 50;
  double fd_step = 1e-7;
  double damping = 1.0;  // first line-search step fraction, in (0, 1]
};

struct PressureSolve {
  Field pi;
  int iterations = 0;
  double final_residual = 0.0;
  std::vector<double> residual_history;
};

struct HyperbolicResult {
  Field pi;
  Field rho_new;
  Field momentum_star;
  int newton_iterations = 0;
  double final_residual = 0.0;
};

/// Explicit side of the implicit density update:
///   phi = rho - dt div(rho u) + dt^2 div( div(rho u x u) + grad p(Z) ).
/// Inner divergences are Rusanov fluxes, the outer one is centered, so every term
/// telescopes on periodic grids and sum(phi) = sum(rho).
auto assemble_pressure_rhs(const FlowState&, const PressureParams&, double dt,
                           const Grid1D&,
                           double velocity_floor = kDefaultVelocityFloor) -> Field;

/// Damped Newton iteration for the congestion-pressure system
///   rho_star_i Z(pi_i) - dt^2 (L pi)_i = phi_i,  pi_i >= 0,
/// with Z the inverse congestion-pressure law. Iterates are projected onto pi >= 0
/// and steps halve until the sup-norm residual drops. Starts from initial_guess when
/// given, else from the cell-local inverse of phi / rho_star. Throws NewtonFailure
/// (carrying the residual history) if the tolerance is still unmet after
/// max_iterations updates.
auto solve_pressure_equation(const Field& phi, const Field& rho_star,
                             const PressureParams&, double dt, const Grid1D&,
                             const NewtonConfig& = {},
                             const Field* initial_guess = nullptr) -> PressureSolve;

/// rho_i = rho_star_i Z(pi_i); strictly below rho_star by construction.
auto recover_density(const Field& pi, const Field& rho_star,
                     const PressureParams&) -> Field;

/// m* = m - dt ( div(rho u x u) + grad p(Z) + grad pi ), with the updated pressure.
auto update_momentum_direct(const FlowState&, const Field& pi_new, const PressureParams&,
                            double dt, const Grid1D&,
                            double velocity_floor = kDefaultVelocityFloor) -> Field;

/// max_i |u_i| + sqrt(p'(Z_i))
double max_wave_speed(const FlowState&, const PressureParams&,
                      double velocity_floor = kDefaultVelocityFloor);

/// speed <= sigma dx / dt
bool cfl_satisfied(double wave_speed, double dt, double dx, double sigma);

/// The whole first fractional step: assemble phi, solve for pi, recover the density,
/// update the momentum.
auto hyperbolic_step(const FlowState&, const PressureParams&, double dt, const Grid1D&,
                     const NewtonConfig& = {}, const Field* pi_guess = nullptr,
                     double velocity_floor = kDefaultVelocityFloor) -> HyperbolicResult;

namespace ref {
/// Serial twin of the density recovery map.
auto recover_density(const Field& pi, const Field& rho_star,
                     const PressureParams&) -> Field;
}  // namespace ref

}  // namespace crowdflow
