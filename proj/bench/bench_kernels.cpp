// Timing harness for the field kernels: the OpenMP build against the serial
// reference twins, plus a bitwise agreement check on every size it touches.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "crowdflow/spatial_ops.hpp"

namespace {

using crowdflow::Field;
using crowdflow::FieldParity;
using crowdflow::Grid1D;

double g_sink = 0.0;  // keeps the kernels from being optimized away

template <class F>
double best_seconds(F&& body, int reps) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    body();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

bool identical(const Field& a, const Field& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

struct KernelCase {
  std::string name;
  Field (*parallel)(const Field&, const Grid1D&, FieldParity);
  Field (*serial)(const Field&, const Grid1D&, FieldParity);
};

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("openmp: %d thread(s)\n", omp_get_max_threads());
#else
  std::printf("openmp: disabled at build time\n");
#endif
  std::printf("%-10s %10s %12s %12s %9s %8s\n", "kernel", "n", "serial[ms]",
              "parallel[ms]", "speedup", "match");

  std::mt19937 rng(42);
  for (const std::size_t n : {std::size_t{1} << 12, std::size_t{1} << 15,
                              std::size_t{1} << 18, std::size_t{1} << 21}) {
    const Grid1D grid = crowdflow::make_uniform_grid(n, 1.0);
    Field f(n), u(n), a(n);
    std::uniform_real_distribution<double> df(0.1, 0.9);
    std::uniform_real_distribution<double> du(-1.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      f[i] = df(rng);
      u[i] = du(rng);
      a[i] = std::abs(u[i]) + 1.0;
    }
    const int reps = static_cast<int>(std::max<std::size_t>(3, (1u << 22) / n));

    const KernelCase pointwise[] = {
        {"gradient", &crowdflow::gradient_centered, &crowdflow::ref::gradient_centered},
        {"laplacian", &crowdflow::laplacian, &crowdflow::ref::laplacian},
    };
    for (const auto& k : pointwise) {
      const Field serial = k.serial(f, grid, FieldParity::Even);
      const Field parallel = k.parallel(f, grid, FieldParity::Even);
      const double ts = best_seconds(
          [&] { g_sink += k.serial(f, grid, FieldParity::Even)[n / 2]; }, reps);
      const double tp = best_seconds(
          [&] { g_sink += k.parallel(f, grid, FieldParity::Even)[n / 2]; }, reps);
      std::printf("%-10s %10zu %12.4f %12.4f %9.2f %8s\n", k.name.c_str(), n,
                  1e3 * ts, 1e3 * tp, ts / tp,
                  identical(serial, parallel) ? "yes" : "NO");
    }

    {
      const Field serial =
          crowdflow::ref::rusanov_divergence(f, f, a, grid, FieldParity::Even,
                                             FieldParity::Even);
      const Field parallel = crowdflow::rusanov_divergence(f, f, a, grid,
                                                           FieldParity::Even,
                                                           FieldParity::Even);
      const double ts = best_seconds(
          [&] {
            g_sink += crowdflow::ref::rusanov_divergence(
                f, f, a, grid, FieldParity::Even, FieldParity::Even)[n / 2];
          },
          reps);
      const double tp = best_seconds(
          [&] {
            g_sink += crowdflow::rusanov_divergence(
                f, f, a, grid, FieldParity::Even, FieldParity::Even)[n / 2];
          },
          reps);
      std::printf("%-10s %10zu %12.4f %12.4f %9.2f %8s\n", "rusanov", n, 1e3 * ts,
                  1e3 * tp, ts / tp, identical(serial, parallel) ? "yes" : "NO");
    }

    {
      const Field serial = crowdflow::ref::upwind_advect(f, u, grid, FieldParity::Even);
      const Field parallel = crowdflow::upwind_advect(f, u, grid, FieldParity::Even);
      const double ts = best_seconds(
          [&] { g_sink += crowdflow::ref::upwind_advect(f, u, grid,
                                                        FieldParity::Even)[n / 2]; },
          reps);
      const double tp = best_seconds(
          [&] { g_sink += crowdflow::upwind_advect(f, u, grid,
                                                   FieldParity::Even)[n / 2]; },
          reps);
      std::printf("%-10s %10zu %12.4f %12.4f %9.2f %8s\n", "upwind", n, 1e3 * ts,
                  1e3 * tp, ts / tp, identical(serial, parallel) ? "yes" : "NO");
    }
  }
  std::printf("checksum %.3e\n", g_sink);
  return 0;
}
