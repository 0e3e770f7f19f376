#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "crowdflow/grid.hpp"

namespace crowdflow {

/// Row i reads lower[i] x_{i-1} + diag[i] x_i + upper[i] x_{i+1} = rhs_i.
/// With periodic set, lower[0] multiplies x_{n-1} and upper[n-1] multiplies x_0
/// (the two wrap corners); both slots are ignored otherwise.
struct TridiagonalSystem {
  Field lower;
  Field diag;
  Field upper;
  bool periodic = false;

  auto size() const -> std::size_t { return diag.size(); }
};

/// Thomas elimination; cyclic systems close the wrap with one Sherman-Morrison
/// correction. Throws SingularSystem on a vanishing pivot or singular closure.
auto solve_tridiagonal(const TridiagonalSystem&, const Field& rhs) -> Field;

/// Jacobian of the pressure residual F_i(pi) = local_i(pi_i) - dt^2 (L pi)_i - rhs_i.
/// Off-diagonals carry the exact Laplacian coefficients -dt^2/dx^2; the cell-local
/// slope is probed one-sided with step fd_step * max(1, |pi_i|).
template <class CellLocal>
auto assemble_newton_jacobian(const Field& pi, CellLocal&& cell_local, double fd_step,
                              double dt, const Grid1D& grid) -> TridiagonalSystem {
  const std::size_t n = pi.size();
  if (n != grid.n_cells) throw std::invalid_argument("jacobian: field does not match grid");
  if (!(fd_step > 0.0)) throw std::invalid_argument("jacobian: fd_step must be positive");
  if (!(dt >= 0.0)) throw std::invalid_argument("jacobian: dt must be nonnegative");

  const bool periodic = grid.boundary == BoundaryKind::Periodic;
  const double w = dt * dt / (grid.dx * grid.dx);

  TridiagonalSystem sys;
  sys.periodic = periodic;
  sys.lower.assign(n, -w);
  sys.upper.assign(n, -w);
  sys.diag.assign(n, 0.0);
  if (!periodic) {
    sys.lower[0] = 0.0;
    sys.upper[n - 1] = 0.0;
  }

  for (std::size_t i = 0; i < n; ++i) {
    const double h = fd_step * std::max(1.0, std::abs(pi[i]));
    const double slope = (cell_local(i, pi[i] + h) - cell_local(i, pi[i])) / h;
    // wall rows lose one neighbor: the copied ghost cancels part of the diagonal
    const bool wall = !periodic && (i == 0 || i == n - 1);
    sys.diag[i] = slope + (wall ? w : 2.0 * w);
  }
  return sys;
}

}  // namespace crowdflow
