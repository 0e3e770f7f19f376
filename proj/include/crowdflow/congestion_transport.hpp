#pragma once

#include "crowdflow/grid.hpp"

namespace crowdflow {

/// One upwind Euler step of d(rho_star)/dt + u d(rho_star)/dx = 0 (non-conservative).
/// Enforces the advective limit max|u| dt / dx <= 1; throws CflViolation past it.
/// New extrema are never created: the result stays inside [min rho_star, max rho_star].
auto transport_rho_star(const Field& rho_star, const Field& u, double dt,
                        const Grid1D&) -> Field;

}  // namespace crowdflow
