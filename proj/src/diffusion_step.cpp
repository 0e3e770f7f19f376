#include "crowdflow/diffusion_step.hpp"

#include <stdexcept>

#include "crowdflow/linear_solver.hpp"

namespace crowdflow {

auto solve_diffusion(const Field& rho, const Field& u_star, double mu, double dt,
                     const Grid1D& grid) -> Field {
  if (rho.size() != grid.n_cells || u_star.size() != grid.n_cells)
    throw std::invalid_argument("diffusion: field does not match grid");
  if (!(mu >= 0.0)) throw std::invalid_argument("diffusion: mu must be nonnegative");
  if (!(dt >= 0.0)) throw std::invalid_argument("diffusion: dt must be nonnegative");
  for (double r : rho)
    if (!(r > 0.0)) throw std::invalid_argument("diffusion: rho must be positive");

  if (mu == 0.0 || dt == 0.0) return u_star;

  const std::size_t n = grid.n_cells;
  const bool periodic = grid.boundary == BoundaryKind::Periodic;
  const double w = 2.0 * mu * dt / (grid.dx * grid.dx);

  TridiagonalSystem sys;
  sys.periodic = periodic;
  sys.lower.assign(n, -w);
  sys.upper.assign(n, -w);
  sys.diag.resize(n);
  for (std::size_t i = 0; i < n; ++i) sys.diag[i] = rho[i] + 2.0 * w;
  if (!periodic) {
    // odd ghost at each wall folds into the diagonal
    sys.lower[0] = 0.0;
    sys.upper[n - 1] = 0.0;
    sys.diag[0] = rho[0] + 3.0 * w;
    sys.diag[n - 1] = rho[n - 1] + 3.0 * w;
  }

  Field rhs(n);
  for (std::size_t i = 0; i < n; ++i) rhs[i] = rho[i] * u_star[i];
  return solve_tridiagonal(sys, rhs);
}

}  // namespace crowdflow
