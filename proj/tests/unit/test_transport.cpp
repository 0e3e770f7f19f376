#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "crowdflow/congestion_transport.hpp"
#include "crowdflow/errors.hpp"
#include "test_helpers.hpp"

using namespace crowdflow;

TEST_CASE("uniform ceiling is invariant under any velocity") {
  auto grid = make_uniform_grid(64, 1.0);
  Field rho_star(64, 1.0);
  std::mt19937 rng(6);
  auto u = test_helpers::random_field(rng, 64, -5.0, 5.0);
  // advective limit violated on purpose is not reached: dt small
  auto out = transport_rho_star(rho_star, u, 1e-4, grid);
  CHECK(test_helpers::bitwise_equal(out, rho_star));
}

TEST_CASE("unit-cfl step is an exact shift") {
  // dyadic mesh: dx = 1/16, u = 1, dt = dx, step-function data on a
  // positive background (a zero ceiling is rejected as invalid input)
  auto grid = make_uniform_grid(16, 1.0);
  Field rho_star(16, 1.0);
  for (std::size_t i = 4; i < 9; ++i) rho_star[i] = 2.0;
  Field u(16, 1.0);
  auto out = transport_rho_star(rho_star, u, grid.dx, grid);
  for (std::size_t i = 0; i < 16; ++i) CHECK(out[i] == rho_star[(i + 15) % 16]);

  Field u_back(16, -1.0);
  auto back = transport_rho_star(rho_star, u_back, grid.dx, grid);
  for (std::size_t i = 0; i < 16; ++i) CHECK(back[i] == rho_star[(i + 1) % 16]);
}

TEST_CASE("no new extrema") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dts(0.0, 1.0);
  auto grid = make_uniform_grid(48, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    auto rho_star = test_helpers::random_field(rng, 48, 0.3, 1.5);
    auto u = test_helpers::random_field(rng, 48, -1.0, 1.0);
    double umax = 0.0;
    for (double v : u) umax = std::max(umax, std::abs(v));
    double dt = umax > 0.0 ? dts(rng) * grid.dx / umax : 1.0;
    auto out = transport_rho_star(rho_star, u, dt, grid);
    double lo = *std::min_element(rho_star.begin(), rho_star.end());
    double hi = *std::max_element(rho_star.begin(), rho_star.end());
    for (double v : out) {
      CHECK(v >= lo - 1e-13);
      CHECK(v <= hi + 1e-13);
    }
  }
}

TEST_CASE("zero velocity and zero dt leave the field untouched") {
  auto grid = make_uniform_grid(32, 1.0);
  std::mt19937 rng(8);
  auto rho_star = test_helpers::random_field(rng, 32, 0.5, 1.5);
  Field u_zero(32, 0.0);
  CHECK(test_helpers::bitwise_equal(transport_rho_star(rho_star, u_zero, 1e-2, grid),
                                    rho_star));
  auto u = test_helpers::random_field(rng, 32, -1.0, 1.0);
  CHECK(test_helpers::bitwise_equal(transport_rho_star(rho_star, u, 0.0, grid),
                                    rho_star));
}

TEST_CASE("advective limit violations carry the speed and bound") {
  auto grid = make_uniform_grid(16, 1.0);
  Field rho_star(16, 1.0);
  Field u(16, 2.0);
  const double dt = grid.dx;  // speed * dt = 2 dx
  try {
    transport_rho_star(rho_star, u, dt, grid);
    CHECK(false);
  } catch (const CflViolation& err) {
    CHECK(err.speed == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(err.bound == doctest::Approx(grid.dx / dt).epsilon(1e-15));
    CHECK(std::isnan(err.time));
  }
}

TEST_CASE("argument validation") {
  auto grid = make_uniform_grid(8, 1.0);
  Field rho_star(8, 1.0), u(8, 0.0);
  CHECK_THROWS_AS(transport_rho_star(rho_star, u, -1e-4, grid), std::invalid_argument);
  Field bad(8, 1.0);
  bad[1] = -0.5;
  CHECK_THROWS_AS(transport_rho_star(bad, u, 1e-4, grid), std::invalid_argument);
  Field short_u(7, 0.0);
  CHECK_THROWS_AS(transport_rho_star(rho_star, short_u, 1e-4, grid),
                  std::invalid_argument);
}

TEST_CASE("walls transport nothing through the boundary") {
  // inflow-free walls: velocity odd ghost makes the wall-adjacent donor the cell
  // itself, so a uniform interior stays uniform
  auto grid = make_uniform_grid(16, 1.0, BoundaryKind::DirichletZeroVelocity);
  Field rho_star(16, 0.8);
  std::mt19937 rng(9);
  auto u = test_helpers::random_field(rng, 16, -0.5, 0.5);
  auto out = transport_rho_star(rho_star, u, 1e-2, grid);
  CHECK(test_helpers::bitwise_equal(out, rho_star));
}
