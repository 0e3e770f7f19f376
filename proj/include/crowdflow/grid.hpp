#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace crowdflow {

using Field = std::vector<double>;

enum class BoundaryKind { Periodic, DirichletZeroVelocity };

auto to_string(BoundaryKind) -> std::string;
auto boundary_from_string(const std::string&) -> BoundaryKind;

/// Uniform cell-centered mesh over [0, length); cell i owns [i dx, (i+1) dx).
struct Grid1D {
  std::size_t n_cells = 0;
  double dx = 0.0;
  double length = 0.0;
  BoundaryKind boundary = BoundaryKind::Periodic;

  auto cell_center(std::size_t i) const -> double {
    return (static_cast<double>(i) + 0.5) * dx;
  }
};

/// Requires n_cells >= 4 and a positive finite length.
auto make_uniform_grid(std::size_t n_cells, double length,
                       BoundaryKind boundary = BoundaryKind::Periodic) -> Grid1D;

/// How a field continues past a wall: scalars copy, velocity-like fields flip sign.
/// Ignored on periodic grids.
enum class FieldParity { Even, Odd };

/// f at logical index i, where i may run one mesh width out of range.
double field_at(const Field& f, std::ptrdiff_t i, const Grid1D&, FieldParity parity);

/// Conserved unknowns plus the transported congestion density.
struct FlowState {
  Field rho;
  Field momentum;
  Field rho_star;
  double time = 0.0;
};

/// Throws unless all fields match the grid and every cell has
/// finite values, rho >= 0, rho_star > 0 and rho strictly below rho_star.
void validate_state(const FlowState&, const Grid1D&);

inline constexpr double kDefaultVelocityFloor = 1e-10;

/// u_i = m_i / max(rho_i, floor); zero momentum always gives zero velocity.
auto velocity(const FlowState&, double floor = kDefaultVelocityFloor) -> Field;

/// Z_i = rho_i / rho_star_i. Throws on a nonpositive rho_star entry.
auto density_fraction(const FlowState&) -> Field;

}  // namespace crowdflow
