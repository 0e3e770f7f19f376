#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "crowdflow/diffusion_step.hpp"
#include "test_helpers.hpp"

using namespace crowdflow;

TEST_CASE("zero viscosity returns the input bit for bit") {
  auto grid = make_uniform_grid(64, 1.0);
  std::mt19937 rng(1);
  auto rho = test_helpers::random_field(rng, 64, 0.1, 1.0);
  auto u = test_helpers::random_field(rng, 64, -1.0, 1.0);
  CHECK(test_helpers::bitwise_equal(solve_diffusion(rho, u, 0.0, 1e-4, grid), u));
  CHECK(test_helpers::bitwise_equal(solve_diffusion(rho, u, 1e-3, 0.0, grid), u));
}

TEST_CASE("sine mode is damped by the discrete symbol") {
  auto grid = make_uniform_grid(64, 1.0);
  const double mu = 1e-3, dt = 1e-2;
  Field rho(64, 1.0);
  Field u_star(64);
  for (std::size_t i = 0; i < 64; ++i)
    u_star[i] = std::sin(2.0 * std::numbers::pi * grid.cell_center(i));
  auto u = solve_diffusion(rho, u_star, mu, dt, grid);
  const double denom =
      1.0 + 2.0 * mu * dt * (2.0 / (grid.dx * grid.dx)) *
                (1.0 - std::cos(2.0 * std::numbers::pi * grid.dx));
  CHECK(denom == doctest::Approx(1.0007889343820273).epsilon(1e-15));
  for (std::size_t i = 0; i < 64; ++i)
    CHECK(u[i] == doctest::Approx(u_star[i] / denom).epsilon(1e-12).scale(1.0));
}

TEST_CASE("implicit smoothing matches dense elimination") {
  std::mt19937 rng(2);
  for (auto kind : {BoundaryKind::Periodic, BoundaryKind::DirichletZeroVelocity}) {
    auto grid = make_uniform_grid(32, 1.0, kind);
    auto rho = test_helpers::random_field(rng, 32, 0.5, 2.0);
    auto u_star = test_helpers::random_field(rng, 32, -1.0, 1.0);
    const double mu = 1e-3, dt = 1e-2;
    auto u = solve_diffusion(rho, u_star, mu, dt, grid);

    const double w = 2.0 * mu * dt / (grid.dx * grid.dx);
    TridiagonalSystem sys;
    sys.periodic = kind == BoundaryKind::Periodic;
    sys.lower.assign(32, -w);
    sys.upper.assign(32, -w);
    sys.diag.resize(32);
    Field rhs(32);
    for (std::size_t i = 0; i < 32; ++i) {
      sys.diag[i] = rho[i] + 2.0 * w;
      rhs[i] = rho[i] * u_star[i];
    }
    if (!sys.periodic) {
      // odd ghost: u_{-1} = -u_0 adds a third leg onto the wall diagonal
      sys.lower[0] = 0.0;
      sys.upper[31] = 0.0;
      sys.diag[0] = rho[0] + 3.0 * w;
      sys.diag[31] = rho[31] + 3.0 * w;
    }
    auto y = test_helpers::dense_solve(test_helpers::dense_from_bands(sys), rhs);
    CHECK(test_helpers::max_abs_diff(u, y) < 1e-12);
  }
}

TEST_CASE("maximum principle") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> mus(0.0, 0.05);
  for (int trial = 0; trial < 100; ++trial) {
    auto kind =
        trial % 2 == 0 ? BoundaryKind::Periodic : BoundaryKind::DirichletZeroVelocity;
    auto grid = make_uniform_grid(48, 1.0, kind);
    auto rho = test_helpers::random_field(rng, 48, 0.05, 2.0);
    auto u_star = test_helpers::random_field(rng, 48, -3.0, 3.0);
    auto u = solve_diffusion(rho, u_star, mus(rng), 1e-2, grid);
    double lo = *std::min_element(u_star.begin(), u_star.end());
    double hi = *std::max_element(u_star.begin(), u_star.end());
    if (kind == BoundaryKind::DirichletZeroVelocity) {
      // the wall closure pulls toward the no-slip value
      lo = std::min(lo, 0.0);
      hi = std::max(hi, 0.0);
    }
    for (double v : u) {
      CHECK(v >= lo - 1e-13);
      CHECK(v <= hi + 1e-13);
    }
  }
}

TEST_CASE("smoothing never adds kinetic energy") {
  std::mt19937 rng(4);
  auto grid = make_uniform_grid(128, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    auto rho = test_helpers::random_field(rng, 128, 0.1, 1.5);
    auto u_star = test_helpers::random_field(rng, 128, -2.0, 2.0);
    auto u = solve_diffusion(rho, u_star, 5e-3, 1e-2, grid);
    double before = 0.0, after = 0.0;
    for (std::size_t i = 0; i < 128; ++i) {
      before += rho[i] * u_star[i] * u_star[i];
      after += rho[i] * u[i] * u[i];
    }
    CHECK(after <= before * (1.0 + 1e-14));
  }
}

TEST_CASE("uniform velocity is a periodic fixed point") {
  auto grid = make_uniform_grid(32, 1.0);
  std::mt19937 rng(5);
  auto rho = test_helpers::random_field(rng, 32, 0.2, 1.0);
  Field u_star(32, 0.37);
  auto u = solve_diffusion(rho, u_star, 1e-2, 1e-2, grid);
  for (double v : u) CHECK(v == doctest::Approx(0.37).epsilon(1e-13));
}

TEST_CASE("argument validation") {
  auto grid = make_uniform_grid(8, 1.0);
  Field rho(8, 1.0), u(8, 0.0);
  Field bad_rho(8, 1.0);
  bad_rho[2] = 0.0;
  CHECK_THROWS_AS(solve_diffusion(bad_rho, u, 1e-3, 1e-4, grid), std::invalid_argument);
  CHECK_THROWS_AS(solve_diffusion(rho, u, -1e-3, 1e-4, grid), std::invalid_argument);
  CHECK_THROWS_AS(solve_diffusion(rho, u, 1e-3, -1e-4, grid), std::invalid_argument);
  Field short_u(7, 0.0);
  CHECK_THROWS_AS(solve_diffusion(rho, short_u, 1e-3, 1e-4, grid), std::invalid_argument);
}
