#include "crowdflow/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace crowdflow {

auto to_string(BoundaryKind b) -> std::string {
  return b == BoundaryKind::Periodic ? "periodic" : "dirichlet";
}

auto boundary_from_string(const std::string& s) -> BoundaryKind {
  if (s == "periodic") return BoundaryKind::Periodic;
  if (s == "dirichlet") return BoundaryKind::DirichletZeroVelocity;
  throw std::invalid_argument("unknown boundary kind '" + s +
                              "' (expected periodic or dirichlet)");
}

auto make_uniform_grid(std::size_t n_cells, double length, BoundaryKind boundary)
    -> Grid1D {
  if (n_cells < 4) throw std::invalid_argument("grid needs at least 4 cells");
  if (!(length > 0.0) || !std::isfinite(length))
    throw std::invalid_argument("grid length must be positive and finite");
  return Grid1D{n_cells, length / static_cast<double>(n_cells), length, boundary};
}

double field_at(const Field& f, std::ptrdiff_t i, const Grid1D& grid,
                FieldParity parity) {
  const auto n = static_cast<std::ptrdiff_t>(f.size());
  if (i >= 0 && i < n) return f[static_cast<std::size_t>(i)];
  if (grid.boundary == BoundaryKind::Periodic) {
    const auto j = ((i % n) + n) % n;
    return f[static_cast<std::size_t>(j)];
  }
  // mirror across the wall; odd fields flip sign
  const auto j = i < 0 ? -i - 1 : 2 * n - i - 1;
  const double v = f[static_cast<std::size_t>(j)];
  return parity == FieldParity::Even ? v : -v;
}

void validate_state(const FlowState& state, const Grid1D& grid) {
  const std::size_t n = grid.n_cells;
  if (state.rho.size() != n || state.momentum.size() != n ||
      state.rho_star.size() != n)
    throw std::invalid_argument("state fields do not match the grid");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(state.rho[i]) || !std::isfinite(state.momentum[i]) ||
        !std::isfinite(state.rho_star[i]))
      throw std::invalid_argument("state has a non-finite entry at cell " +
                                  std::to_string(i));
    if (!(state.rho[i] >= 0.0))
      throw std::invalid_argument("negative density at cell " + std::to_string(i));
    if (!(state.rho_star[i] > 0.0))
      throw std::invalid_argument("nonpositive congestion density at cell " +
                                  std::to_string(i));
    if (!(state.rho[i] < state.rho_star[i]))
      throw std::invalid_argument("density reaches the congestion bound at cell " +
                                  std::to_string(i));
  }
}

auto velocity(const FlowState& state, double floor) -> Field {
  if (!(floor > 0.0)) throw std::invalid_argument("velocity floor must be positive");
  if (state.momentum.size() != state.rho.size())
    throw std::invalid_argument("state fields disagree in size");
  const std::size_t n = state.rho.size();
  Field u(n);
  for (std::size_t i = 0; i < n; ++i)
    u[i] = state.momentum[i] / std::max(state.rho[i], floor);
  return u;
}

auto density_fraction(const FlowState& state) -> Field {
  if (state.rho_star.size() != state.rho.size())
    throw std::invalid_argument("state fields disagree in size");
  const std::size_t n = state.rho.size();
  Field z(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(state.rho_star[i] > 0.0))
      throw std::invalid_argument("nonpositive congestion density at cell " +
                                  std::to_string(i));
    z[i] = state.rho[i] / state.rho_star[i];
  }
  return z;
}

}  // namespace crowdflow
