#pragma once

#include "crowdflow/grid.hpp"

namespace crowdflow {

/// Implicit velocity smoothing: solves (rho I - 2 mu dt L) u = rho u_star.
/// mu = 0 returns u_star unchanged, bit for bit. Requires rho > 0 in every cell.
/// On wall grids the ghost velocity flips sign (no-slip closure).
auto solve_diffusion(const Field& rho, const Field& u_star, double mu, double dt,
                     const Grid1D&) -> Field;

}  // namespace crowdflow
