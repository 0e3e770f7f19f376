#include "crowdflow/spatial_ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "crowdflow/parallel.hpp"

namespace crowdflow {

namespace {

void require_match(const Field& f, const Grid1D& grid, const char* what) {
  if (f.size() != grid.n_cells)
    throw std::invalid_argument(std::string(what) + ": field does not match grid");
  if (grid.n_cells == 0 || !(grid.dx > 0.0))
    throw std::invalid_argument(std::string(what) + ": empty grid");
}

void require_speeds(const Field& a) {
  for (double v : a)
    if (!(v >= 0.0))
      throw std::invalid_argument("rusanov: wave speeds must be nonnegative");
}

// One Rusanov face between logical cells l and l+1; expression shared by both
// implementations so they agree bit for bit.
inline double face_flux(const Field& q, const Field& U, const Field& a,
                        const Grid1D& grid, std::ptrdiff_t l, FieldParity qp,
                        FieldParity up) {
  const double ql = field_at(q, l, grid, qp);
  const double qr = field_at(q, l + 1, grid, qp);
  const double ul = field_at(U, l, grid, up);
  const double ur = field_at(U, l + 1, grid, up);
  const double al = field_at(a, l, grid, FieldParity::Even);
  const double ar = field_at(a, l + 1, grid, FieldParity::Even);
  return 0.5 * (ql + qr) - 0.5 * std::max(al, ar) * (ur - ul);
}

}  // namespace

namespace ref {

auto gradient_centered(const Field& f, const Grid1D& grid, FieldParity parity)
    -> Field {
  require_match(f, grid, "gradient");
  const auto n = static_cast<std::ptrdiff_t>(grid.n_cells);
  const double inv2dx = 1.0 / (2.0 * grid.dx);
  Field out(grid.n_cells);
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double fp = field_at(f, i + 1, grid, parity);
    const double fm = field_at(f, i - 1, grid, parity);
    out[static_cast<std::size_t>(i)] = (fp - fm) * inv2dx;
  }
  return out;
}

auto laplacian(const Field& f, const Grid1D& grid, FieldParity parity) -> Field {
  require_match(f, grid, "laplacian");
  const auto n = static_cast<std::ptrdiff_t>(grid.n_cells);
  const double invdx2 = 1.0 / (grid.dx * grid.dx);
  Field out(grid.n_cells);
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double fp = field_at(f, i + 1, grid, parity);
    const double fm = field_at(f, i - 1, grid, parity);
    out[static_cast<std::size_t>(i)] =
        ((fp + fm) - 2.0 * f[static_cast<std::size_t>(i)]) * invdx2;
  }
  return out;
}

auto rusanov_divergence(const Field& q, const Field& U, const Field& a,
                        const Grid1D& grid, FieldParity q_parity,
                        FieldParity u_parity) -> Field {
  require_match(q, grid, "rusanov");
  require_match(U, grid, "rusanov");
  require_match(a, grid, "rusanov");
  require_speeds(a);
  const auto n = static_cast<std::ptrdiff_t>(grid.n_cells);
  const double invdx = 1.0 / grid.dx;
  Field out(grid.n_cells);
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double right = face_flux(q, U, a, grid, i, q_parity, u_parity);
    const double left = face_flux(q, U, a, grid, i - 1, q_parity, u_parity);
    out[static_cast<std::size_t>(i)] = (right - left) * invdx;
  }
  return out;
}

auto upwind_advect(const Field& f, const Field& u, const Grid1D& grid,
                   FieldParity parity) -> Field {
  require_match(f, grid, "upwind");
  require_match(u, grid, "upwind");
  const auto n = static_cast<std::ptrdiff_t>(grid.n_cells);
  const double invdx = 1.0 / grid.dx;
  Field out(grid.n_cells);
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const double ui = u[k];
    if (ui > 0.0)
      out[k] = ui * ((f[k] - field_at(f, i - 1, grid, parity)) * invdx);
    else if (ui < 0.0)
      out[k] = ui * ((field_at(f, i + 1, grid, parity) - f[k]) * invdx);
    else
      out[k] = 0.0;
  }
  return out;
}

}  // namespace ref

auto gradient_centered(const Field& f, const Grid1D& grid, FieldParity parity)
    -> Field {
  require_match(f, grid, "gradient");
  const auto n = static_cast<std::ptrdiff_t>(grid.n_cells);
  const double inv2dx = 1.0 / (2.0 * grid.dx);
  Field out(grid.n_cells);
#pragma omp parallel for schedule(static) if (grid.n_cells >= kParallelGrain)
  for (std::ptrdiff_t i = 1; i < n - 1; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = (f[k + 1] - f[k - 1]) * inv2dx;
  }
  for (std::ptrdiff_t i : {std::ptrdiff_t{0}, n - 1}) {
    const double fp = field_at(f, i + 1, grid, parity);
    const double fm = field_at(f, i - 1, grid, parity);
    out[static_cast<std::size_t>(i)] = (fp - fm) * inv2dx;
  }
  return out;
}

auto laplacian(const Field& f, const Grid1D& grid, FieldParity parity) -> Field {
  require_match(f, grid, "laplacian");
  const auto n = static_cast<std::ptrdiff_t>(grid.n_cells);
  const double invdx2 = 1.0 / (grid.dx * grid.dx);
  Field out(grid.n_cells);
#pragma omp parallel for schedule(static) if (grid.n_cells >= kParallelGrain)
  for (std::ptrdiff_t i = 1; i < n - 1; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = ((f[k + 1] + f[k - 1]) - 2.0 * f[k]) * invdx2;
  }
  for (std::ptrdiff_t i : {std::ptrdiff_t{0}, n - 1}) {
    const double fp = field_at(f, i + 1, grid, parity);
    const double fm = field_at(f, i - 1, grid, parity);
    out[static_cast<std::size_t>(i)] =
        ((fp + fm) - 2.0 * f[static_cast<std::size_t>(i)]) * invdx2;
  }
  return out;
}

auto rusanov_divergence(const Field& q, const Field& U, const Field& a,
                        const Grid1D& grid, FieldParity q_parity,
                        FieldParity u_parity) -> Field {
  require_match(q, grid, "rusanov");
  require_match(U, grid, "rusanov");
  require_match(a, grid, "rusanov");
  require_speeds(a);
  const auto n = static_cast<std::ptrdiff_t>(grid.n_cells);
  const double invdx = 1.0 / grid.dx;
  Field face(grid.n_cells + 1);  // face[i] sits between cells i-1 and i
#pragma omp parallel for schedule(static) if (grid.n_cells >= kParallelGrain)
  for (std::ptrdiff_t i = 0; i <= n; ++i)
    face[static_cast<std::size_t>(i)] =
        face_flux(q, U, a, grid, i - 1, q_parity, u_parity);
  Field out(grid.n_cells);
#pragma omp parallel for schedule(static) if (grid.n_cells >= kParallelGrain)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = (face[k + 1] - face[k]) * invdx;
  }
  return out;
}

auto upwind_advect(const Field& f, const Field& u, const Grid1D& grid,
                   FieldParity parity) -> Field {
  require_match(f, grid, "upwind");
  require_match(u, grid, "upwind");
  const auto n = static_cast<std::ptrdiff_t>(grid.n_cells);
  const double invdx = 1.0 / grid.dx;
  Field out(grid.n_cells);
#pragma omp parallel for schedule(static) if (grid.n_cells >= kParallelGrain)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const double ui = u[k];
    if (ui > 0.0)
      out[k] = ui * ((f[k] - field_at(f, i - 1, grid, parity)) * invdx);
    else if (ui < 0.0)
      out[k] = ui * ((field_at(f, i + 1, grid, parity) - f[k]) * invdx);
    else
      out[k] = 0.0;
  }
  return out;
}

}  // namespace crowdflow
