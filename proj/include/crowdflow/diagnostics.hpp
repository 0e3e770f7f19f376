#pragma once

#include <cstddef>

#include "crowdflow/grid.hpp"
#include "crowdflow/pressure_laws.hpp"

namespace crowdflow {

/// One row of the per-step run log.
struct DiagnosticsRecord {
  double time = 0.0;
  double total_mass = 0.0;
  double total_energy = 0.0;
  double max_Z = 0.0;
  double rho_star_min = 0.0;
  double rho_star_max = 0.0;
  int newton_iterations = 0;
  double max_wave_speed = 0.0;
  bool cfl_ok = true;
};

/// sum_i rho_i dx (compensated summation).
double total_mass(const FlowState&, const Grid1D&);

/// sum_i ( rho_i u_i^2 / 2 + Z_i Gamma(Z_i) ) dx. Inherits the exponent
/// preconditions of the energy potential (alpha >= 2, gamma >= 2).
double discrete_energy(const FlowState&, const Grid1D&, const PressureParams&,
                       double velocity_floor = kDefaultVelocityFloor);

struct ConstraintReport {
  double max_Z = 0.0;
  std::size_t argmax = 0;
};

/// Largest density fraction and the first cell attaining it.
auto constraint_report(const FlowState&) -> ConstraintReport;

/// Deviation from mirror symmetry about x = center with periodic wrap:
///   max_i |rho_i - rho_j| + |m_i + m_j| + |rho_star_i - rho_star_j|,
/// j the reflected cell of i. Throws unless 2*center sits on the mesh, so that
/// reflection maps cell centers onto cell centers.
double reflection_error(const FlowState&, const Grid1D&, double center);

/// Same deviation restricted to mirror pairs with both centers inside [x_lo, x_hi].
double reflection_error_windowed(const FlowState&, const Grid1D&, double center,
                                 double x_lo, double x_hi);

}  // namespace crowdflow
