#include "crowdflow/congestion_transport.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "crowdflow/errors.hpp"
#include "crowdflow/spatial_ops.hpp"

namespace crowdflow {

auto transport_rho_star(const Field& rho_star, const Field& u, double dt,
                        const Grid1D& grid) -> Field {
  if (rho_star.size() != grid.n_cells || u.size() != grid.n_cells)
    throw std::invalid_argument("congestion transport: field does not match grid");
  if (!(dt >= 0.0))
    throw std::invalid_argument("congestion transport: dt must be nonnegative");
  for (double r : rho_star)
    if (!(r > 0.0))
      throw std::invalid_argument("congestion transport: rho_star must be positive");

  double speed = 0.0;
  for (double v : u) speed = std::max(speed, std::abs(v));
  const double bound = dt > 0.0 ? grid.dx / dt : std::numeric_limits<double>::infinity();
  if (dt > 0.0 && speed * dt > grid.dx * (1.0 + 1e-12)) {
    char msg[128];
    std::snprintf(msg, sizeof msg,
                  "congestion transport: advective limit exceeded (%.6g > %.6g)",
                  speed, bound);
    throw CflViolation(msg, speed, bound, std::numeric_limits<double>::quiet_NaN());
  }

  const Field adv = upwind_advect(rho_star, u, grid, FieldParity::Even);
  Field out(grid.n_cells);
  for (std::size_t i = 0; i < grid.n_cells; ++i) out[i] = rho_star[i] - dt * adv[i];
  return out;
}

}  // namespace crowdflow
