#include "crowdflow/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

namespace crowdflow {

namespace {

// compensated sum keeps the drift diagnostics below the scheme's own budget
double kahan_sum(const Field& v) {
  double sum = 0.0;
  double carry = 0.0;
  for (double x : v) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace

double total_mass(const FlowState& state, const Grid1D& grid) {
  validate_state(state, grid);
  return kahan_sum(state.rho) * grid.dx;
}

double discrete_energy(const FlowState& state, const Grid1D& grid,
                       const PressureParams& params, double velocity_floor) {
  validate_state(state, grid);
  validate(params);
  const Field u = velocity(state, velocity_floor);
  Field cell_energy(grid.n_cells);
  for (std::size_t i = 0; i < grid.n_cells; ++i) {
    const double Z = state.rho[i] / state.rho_star[i];
    cell_energy[i] =
        0.5 * state.rho[i] * u[i] * u[i] + Z * energy_potential(Z, params);
  }
  return kahan_sum(cell_energy) * grid.dx;
}

auto constraint_report(const FlowState& state) -> ConstraintReport {
  if (state.rho.empty() || state.rho_star.size() != state.rho.size())
    throw std::invalid_argument("constraint report: field sizes disagree");
  ConstraintReport report;
  report.max_Z = -1.0;
  for (std::size_t i = 0; i < state.rho.size(); ++i) {
    if (!(state.rho_star[i] > 0.0))
      throw std::invalid_argument("constraint report: rho_star must be positive");
    const double Z = state.rho[i] / state.rho_star[i];
    if (Z > report.max_Z) {
      report.max_Z = Z;
      report.argmax = i;
    }
  }
  return report;
}

namespace {

// mirror cell index about x = center; valid when 2*center lies on the mesh
auto mirror_offset(const Grid1D& grid, double center) -> long long {
  const double ratio = 2.0 * center / grid.dx;
  const long long k2 = std::llround(ratio);
  if (std::abs(ratio - static_cast<double>(k2)) > 1e-9)
    throw std::invalid_argument(
        "reflection error: 2*center must be an integer number of cells");
  return k2;
}

auto wrap_index(long long j, std::size_t n) -> std::size_t {
  const auto nn = static_cast<long long>(n);
  return static_cast<std::size_t>(((j % nn) + nn) % nn);
}

double pair_deviation(const FlowState& state, std::size_t i, std::size_t j) {
  return std::abs(state.rho[i] - state.rho[j]) +
         std::abs(state.momentum[i] + state.momentum[j]) +
         std::abs(state.rho_star[i] - state.rho_star[j]);
}

}  // namespace

double reflection_error(const FlowState& state, const Grid1D& grid, double center) {
  validate_state(state, grid);
  const long long k2 = mirror_offset(grid, center);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.n_cells; ++i) {
    const std::size_t j = wrap_index(k2 - 1 - static_cast<long long>(i), grid.n_cells);
    worst = std::max(worst, pair_deviation(state, i, j));
  }
  return worst;
}

double reflection_error_windowed(const FlowState& state, const Grid1D& grid,
                                 double center, double x_lo, double x_hi) {
  validate_state(state, grid);
  if (!(x_lo < x_hi))
    throw std::invalid_argument("reflection error: window must be nonempty");
  const long long k2 = mirror_offset(grid, center);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.n_cells; ++i) {
    const std::size_t j = wrap_index(k2 - 1 - static_cast<long long>(i), grid.n_cells);
    const double xi = grid.cell_center(i);
    const double xj = grid.cell_center(j);
    if (xi < x_lo || xi > x_hi || xj < x_lo || xj > x_hi) continue;
    worst = std::max(worst, pair_deviation(state, i, j));
  }
  return worst;
}

}  // namespace crowdflow
