#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "crowdflow/errors.hpp"
#include "crowdflow/linear_solver.hpp"
#include "test_helpers.hpp"

using namespace crowdflow;

namespace {

TridiagonalSystem random_dominant(std::mt19937& rng, std::size_t n, bool periodic) {
  std::uniform_real_distribution<double> off(-1.0, 1.0);
  std::uniform_real_distribution<double> bump(0.1, 2.0);
  TridiagonalSystem sys;
  sys.periodic = periodic;
  sys.lower.resize(n);
  sys.diag.resize(n);
  sys.upper.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    sys.lower[i] = off(rng);
    sys.upper[i] = off(rng);
    double row = std::abs(sys.lower[i]) + std::abs(sys.upper[i]);
    sys.diag[i] = (i % 2 == 0 ? 1.0 : -1.0) * (row + bump(rng));
  }
  if (!periodic) {
    sys.lower[0] = 0.0;
    sys.upper[n - 1] = 0.0;
  }
  return sys;
}

}  // namespace

TEST_CASE("identity system returns the right-hand side") {
  TridiagonalSystem sys;
  sys.diag = {1.0, 1.0, 1.0, 1.0};
  sys.lower = {0.0, 0.0, 0.0, 0.0};
  sys.upper = {0.0, 0.0, 0.0, 0.0};
  Field rhs = {1.5, -2.0, 0.25, 7.0};
  auto x = solve_tridiagonal(sys, rhs);
  CHECK(test_helpers::bitwise_equal(x, rhs));
}

TEST_CASE("four by four systems match dense elimination") {
  std::mt19937 rng(101);
  for (bool periodic : {false, true}) {
    auto sys = random_dominant(rng, 4, periodic);
    Field rhs = {1.0, -2.0, 3.0, -4.0};
    auto x = solve_tridiagonal(sys, rhs);
    auto dense = test_helpers::dense_from_bands(sys);
    auto y = test_helpers::dense_solve(dense, rhs);
    CHECK(test_helpers::max_abs_diff(x, y) < 1e-13);
  }
}

TEST_CASE("random dominant systems match dense elimination") {
  std::mt19937 rng(202);
  std::uniform_int_distribution<std::size_t> sizes(4, 64);
  std::uniform_real_distribution<double> rv(-5.0, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = sizes(rng);
    bool periodic = trial % 2 == 0;
    auto sys = random_dominant(rng, n, periodic);
    Field rhs(n);
    for (auto& v : rhs) v = rv(rng);
    auto x = solve_tridiagonal(sys, rhs);
    auto y = test_helpers::dense_solve(test_helpers::dense_from_bands(sys), rhs);
    double scale = 0.0;
    for (double v : y) scale = std::max(scale, std::abs(v));
    CHECK(test_helpers::max_abs_diff(x, y) < 1e-12 * std::max(1.0, scale));
  }
}

TEST_CASE("solution satisfies the equations") {
  std::mt19937 rng(303);
  auto sys = random_dominant(rng, 50, true);
  Field rhs(50);
  std::uniform_real_distribution<double> rv(-1.0, 1.0);
  for (auto& v : rhs) v = rv(rng);
  auto x = solve_tridiagonal(sys, rhs);
  for (std::size_t i = 0; i < 50; ++i) {
    double left = sys.lower[i] * x[(i + 49) % 50] + sys.diag[i] * x[i] +
                  sys.upper[i] * x[(i + 1) % 50];
    CHECK(left == doctest::Approx(rhs[i]).epsilon(1e-11).scale(1.0));
  }
}

TEST_CASE("singular systems are reported") {
  SUBCASE("periodic laplacian has the constant nullspace") {
    TridiagonalSystem sys;
    std::size_t n = 8;
    sys.periodic = true;
    sys.lower.assign(n, 1.0);
    sys.upper.assign(n, 1.0);
    sys.diag.assign(n, -2.0);
    Field rhs(n, 1.0);
    CHECK_THROWS_AS(solve_tridiagonal(sys, rhs), SingularSystem);
  }
  SUBCASE("zero matrix") {
    TridiagonalSystem sys;
    sys.lower.assign(4, 0.0);
    sys.diag.assign(4, 0.0);
    sys.upper.assign(4, 0.0);
    Field rhs(4, 1.0);
    CHECK_THROWS_AS(solve_tridiagonal(sys, rhs), SingularSystem);
  }
  SUBCASE("vanishing pivot mid-sweep") {
    TridiagonalSystem sys;
    sys.lower = {0.0, 1.0, 1.0};
    sys.diag = {1.0, 1.0, 1.0};
    sys.upper = {1.0, 0.0, 0.0};
    // after eliminating row 0, row 1 pivot becomes 1 - 1*1 = 0
    Field rhs(3, 1.0);
    CHECK_THROWS_AS(solve_tridiagonal(sys, rhs), SingularSystem);
  }
}

TEST_CASE("band size mismatches are rejected") {
  TridiagonalSystem sys;
  sys.diag.assign(4, 2.0);
  sys.lower.assign(3, 0.0);
  sys.upper.assign(4, 0.0);
  Field rhs(4, 1.0);
  CHECK_THROWS_AS(solve_tridiagonal(sys, rhs), std::invalid_argument);
  sys.lower.assign(4, 0.0);
  Field bad_rhs(5, 1.0);
  CHECK_THROWS_AS(solve_tridiagonal(sys, bad_rhs), std::invalid_argument);
}

TEST_CASE("newton jacobian carries exact coupling bands") {
  auto grid = make_uniform_grid(8, 1.0);
  Field pi(8, 0.5);
  auto local = [](std::size_t, double v) { return v * v; };
  const double dt = 1e-2;
  auto sys = assemble_newton_jacobian(pi, local, 1e-7, dt, grid);
  const double w = dt * dt / (grid.dx * grid.dx);
  CHECK(sys.periodic);
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(sys.lower[i] == -w);
    CHECK(sys.upper[i] == -w);
    // one-sided probe of d(v^2)/dv = 2v at v = 0.5 with h = 1e-7
    CHECK(sys.diag[i] == doctest::Approx(1.0 + 2.0 * w).epsilon(1e-6));
  }
}

TEST_CASE("newton jacobian decouples when dt is zero") {
  auto grid = make_uniform_grid(8, 1.0);
  Field pi(8, 2.0);
  auto local = [](std::size_t, double v) { return 3.0 * v; };
  auto sys = assemble_newton_jacobian(pi, local, 1e-7, 0.0, grid);
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(sys.lower[i] == 0.0);
    CHECK(sys.upper[i] == 0.0);
    CHECK(sys.diag[i] == doctest::Approx(3.0).epsilon(1e-8));
  }
}

TEST_CASE("newton jacobian wall rows keep a single neighbor") {
  auto grid = make_uniform_grid(8, 1.0, BoundaryKind::DirichletZeroVelocity);
  Field pi(8, 1.0);
  auto local = [](std::size_t, double v) { return 5.0 * v; };
  const double dt = 1e-2;
  auto sys = assemble_newton_jacobian(pi, local, 1e-7, dt, grid);
  const double w = dt * dt / (grid.dx * grid.dx);
  CHECK(!sys.periodic);
  CHECK(sys.lower[0] == 0.0);
  CHECK(sys.upper[7] == 0.0);
  CHECK(sys.upper[0] == -w);
  CHECK(sys.lower[7] == -w);
  // copied ghost cancels one laplacian leg on wall rows
  CHECK(sys.diag[0] == doctest::Approx(5.0 + w).epsilon(1e-8));
  CHECK(sys.diag[3] == doctest::Approx(5.0 + 2.0 * w).epsilon(1e-8));
}

TEST_CASE("newton jacobian argument validation") {
  auto grid = make_uniform_grid(8, 1.0);
  Field pi(7, 0.0);
  auto local = [](std::size_t, double v) { return v; };
  CHECK_THROWS_AS(assemble_newton_jacobian(pi, local, 1e-7, 1.0, grid),
                  std::invalid_argument);
  Field ok(8, 0.0);
  CHECK_THROWS_AS(assemble_newton_jacobian(ok, local, 0.0, 1.0, grid),
                  std::invalid_argument);
  CHECK_THROWS_AS(assemble_newton_jacobian(ok, local, 1e-7, -1.0, grid),
                  std::invalid_argument);
}
