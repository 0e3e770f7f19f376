#include "crowdflow/linear_solver.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "crowdflow/errors.hpp"

namespace crowdflow {

namespace {

auto coefficient_scale(const TridiagonalSystem& sys) -> double {
  double scale = 0.0;
  for (std::size_t i = 0; i < sys.size(); ++i) {
    const double row =
        std::abs(sys.lower[i]) + std::abs(sys.diag[i]) + std::abs(sys.upper[i]);
    if (row > scale) scale = row;
  }
  return scale;
}

// Plain Thomas solve; lower[0] and upper[n-1] are never referenced, so the
// same routine serves as the inner solver for the cyclic reduction.
auto thomas(const Field& lower, const Field& diag, const Field& upper,
            const Field& rhs, double pivot_floor) -> Field {
  const std::size_t n = diag.size();
  Field cp(n, 0.0);
  Field x(n);
  double piv = diag[0];
  if (std::abs(piv) <= pivot_floor)
    throw SingularSystem("tridiagonal solve: zero pivot at row 0");
  cp[0] = upper[0] / piv;
  x[0] = rhs[0] / piv;
  for (std::size_t i = 1; i < n; ++i) {
    piv = diag[i] - lower[i] * cp[i - 1];
    if (std::abs(piv) <= pivot_floor)
      throw SingularSystem("tridiagonal solve: zero pivot at row " +
                           std::to_string(i));
    if (i + 1 < n) cp[i] = upper[i] / piv;
    x[i] = (rhs[i] - lower[i] * x[i - 1]) / piv;
  }
  for (std::size_t i = n - 1; i-- > 0;) x[i] -= cp[i] * x[i + 1];
  return x;
}

}  // namespace

auto solve_tridiagonal(const TridiagonalSystem& sys, const Field& rhs) -> Field {
  const std::size_t n = sys.size();
  if (n == 0) throw std::invalid_argument("tridiagonal solve: empty system");
  if (sys.lower.size() != n || sys.upper.size() != n)
    throw std::invalid_argument("tridiagonal solve: band sizes disagree");
  if (rhs.size() != n)
    throw std::invalid_argument("tridiagonal solve: rhs size mismatch");

  const double scale = coefficient_scale(sys);
  if (scale == 0.0)
    throw SingularSystem("tridiagonal solve: all coefficients vanish");
  const double pivot_floor = 1e-14 * scale;

  const double corner_lo = sys.periodic ? sys.lower[0] : 0.0;   // row 0, col n-1
  const double corner_hi = sys.periodic ? sys.upper[n - 1] : 0.0;  // row n-1, col 0
  const bool cyclic = corner_lo != 0.0 || corner_hi != 0.0;

  if (!cyclic) return thomas(sys.lower, sys.diag, sys.upper, rhs, pivot_floor);

  if (n < 3)
    throw std::invalid_argument(
        "tridiagonal solve: periodic coupling needs at least 3 rows");

  // Rank-one reduction: subtract u v^T carrying the wrap entries, solve the
  // plain band twice, then correct.
  const double gamma = -(sys.diag[0] != 0.0 ? sys.diag[0] : scale);
  Field diag = sys.diag;
  diag[0] -= gamma;
  diag[n - 1] -= corner_hi * corner_lo / gamma;

  Field u(n, 0.0);
  u[0] = gamma;
  u[n - 1] = corner_hi;

  const Field y = thomas(sys.lower, diag, sys.upper, rhs, pivot_floor);
  const Field z = thomas(sys.lower, diag, sys.upper, u, pivot_floor);

  const double vy = y[0] + corner_lo / gamma * y[n - 1];
  const double vz = z[0] + corner_lo / gamma * z[n - 1];
  const double denom = 1.0 + vz;
  if (std::abs(denom) <= 1e-12 * (1.0 + std::abs(vz)))
    throw SingularSystem("tridiagonal solve: cyclic closure is singular");

  Field x(n);
  const double factor = vy / denom;
  for (std::size_t i = 0; i < n; ++i) x[i] = y[i] - factor * z[i];
  return x;
}

}  // namespace crowdflow
