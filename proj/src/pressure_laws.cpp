#include "crowdflow/pressure_laws.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace crowdflow {

void validate(const PressureParams& p) {
  if (!(p.epsilon > 0.0) || !std::isfinite(p.epsilon))
    throw std::invalid_argument("pressure law needs epsilon > 0");
  if (!(p.alpha >= 0.0) || !std::isfinite(p.alpha))
    throw std::invalid_argument("pressure law needs alpha >= 0");
  if (!(p.beta > 0.0) || !std::isfinite(p.beta))
    throw std::invalid_argument("pressure law needs beta > 0");
  if (!(p.gamma > 1.0) || !std::isfinite(p.gamma))
    throw std::invalid_argument("pressure law needs gamma > 1");
}

namespace {

void require_fraction(double Z, bool exclude_one) {
  if (!std::isfinite(Z) || Z < 0.0 || (exclude_one ? Z >= 1.0 : false))
    throw std::invalid_argument("density fraction out of range");
}

}  // namespace

double background_pressure(double Z, const PressureParams& p) {
  validate(p);
  require_fraction(Z, false);
  return std::pow(Z, p.gamma);
}

double background_pressure_derivative(double Z, const PressureParams& p) {
  validate(p);
  require_fraction(Z, false);
  return p.gamma * std::pow(Z, p.gamma - 1.0);
}

double singular_pressure(double Z, const PressureParams& p) {
  validate(p);
  require_fraction(Z, true);
  const double num = p.alpha == 0.0 ? 1.0 : std::pow(Z, p.alpha);
  return p.epsilon * num / std::pow(1.0 - Z, p.beta);
}

double singular_pressure_derivative(double Z, const PressureParams& p) {
  validate(p);
  require_fraction(Z, true);
  if (Z == 0.0 && p.alpha < 1.0)
    throw std::invalid_argument("slope of the congestion law diverges at Z = 0");
  double num = p.beta * (p.alpha == 0.0 ? 1.0 : std::pow(Z, p.alpha));
  if (p.alpha > 0.0) num += p.alpha * std::pow(Z, p.alpha - 1.0) * (1.0 - Z);
  return p.epsilon * num / std::pow(1.0 - Z, p.beta + 1.0);
}

double invert_singular_pressure(double pi_value, const PressureParams& p) {
  validate(p);
  if (!(pi_value >= 0.0) || !std::isfinite(pi_value))
    throw std::invalid_argument("congestion pressure must be finite and nonnegative");

  if (p.alpha == 2.0 && p.beta == 2.0) {
    const double s = std::sqrt(pi_value / p.epsilon);
    // s / (1 + s) rounds to 1.0 once s overwhelms the addition; keep Z < 1
    return std::min(s / (1.0 + s), 1.0 - 1e-15);
  }

  const double pi_floor = p.alpha == 0.0 ? p.epsilon : 0.0;
  if (pi_value <= pi_floor) return 0.0;

  double lo = 0.0;
  double hi = 1.0 - 1e-15;
  if (singular_pressure(hi, p) <= pi_value) return hi;  // beyond representable Z

  // asymptotic seeds: pi ~ eps Z^alpha near 0, pi ~ eps (1-Z)^-beta near 1
  double z;
  if (pi_value > p.epsilon)
    z = 1.0 - std::pow(p.epsilon / pi_value, 1.0 / p.beta);
  else
    z = std::pow(pi_value / p.epsilon, 1.0 / std::max(p.alpha, 1.0));
  z = std::clamp(z, 1e-12, hi);

  for (int it = 0; it < 200; ++it) {
    const double g = singular_pressure(z, p) - pi_value;
    if (g == 0.0) return z;
    (g > 0.0 ? hi : lo) = z;
    const double slope = singular_pressure_derivative(z, p);
    double next = slope > 0.0 ? z - g / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // bisection safeguard
    if (std::abs(next - z) <= 5e-17 * std::max(1.0, z)) return next;
    z = next;
    if (hi - lo <= 1e-16 * std::max(1.0, lo)) break;
  }
  return z;
}

namespace {

double potential_integrand(double s, const PressureParams& p) {
  // (pi(s) + p(s)) / s^2 with the exponents already shifted down
  const double sing =
      p.epsilon * std::pow(s, p.alpha - 2.0) / std::pow(1.0 - s, p.beta);
  return sing + std::pow(s, p.gamma - 2.0);
}

double simpson(double a, double fa, double b, double fb, double m, double fm,
               double whole, double tol, int depth, const PressureParams& p) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = potential_integrand(lm, p);
  const double frm = potential_integrand(rm, p);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson(a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1, p) +
         simpson(m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1, p);
}

}  // namespace

double energy_potential_quadrature(double Z, const PressureParams& p) {
  validate(p);
  if (!(p.alpha >= 2.0) || !(p.gamma >= 2.0))
    throw std::invalid_argument("energy potential needs alpha >= 2 and gamma >= 2");
  if (!std::isfinite(Z) || Z < 0.0 || Z >= 1.0)
    throw std::invalid_argument("density fraction out of range");
  if (Z == 0.0) return 0.0;
  const double a = 0.0;
  const double b = Z;
  // integrand value at 0: the shifted powers floor at exponent 0
  const double fa = (p.alpha == 2.0 ? p.epsilon : 0.0) + (p.gamma == 2.0 ? 1.0 : 0.0);
  const double fb = potential_integrand(b, p);
  const double m = 0.5 * (a + b);
  const double fm = potential_integrand(m, p);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson(a, fa, b, fb, m, fm, whole, 1e-13, 48, p);
}

double energy_potential(double Z, const PressureParams& p) {
  validate(p);
  if (!(p.alpha >= 2.0) || !(p.gamma >= 2.0))
    throw std::invalid_argument("energy potential needs alpha >= 2 and gamma >= 2");
  if (!std::isfinite(Z) || Z < 0.0 || Z >= 1.0)
    throw std::invalid_argument("density fraction out of range");
  if (p.alpha == 2.0) {
    // elementary primitives: eps (1-s)^-beta and s^(gamma-2)
    const double sing =
        p.beta == 1.0
            ? -p.epsilon * std::log1p(-Z)
            : p.epsilon * (std::pow(1.0 - Z, 1.0 - p.beta) - 1.0) / (p.beta - 1.0);
    const double bg =
        p.gamma == 2.0 ? Z : std::pow(Z, p.gamma - 1.0) / (p.gamma - 1.0);
    return sing + bg;
  }
  return energy_potential_quadrature(Z, p);
}

}  // namespace crowdflow
