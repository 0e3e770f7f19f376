#pragma once

namespace crowdflow {

/// Parameters of the two pressure laws acting on the density fraction Z = rho / rho_star:
///   background   p(Z)  = Z^gamma
///   congestion   pi(Z) = eps Z^alpha / (1 - Z)^beta, blowing up as Z -> 1.
struct PressureParams {
  double epsilon = 1e-4;
  double alpha = 2.0;
  double beta = 2.0;
  double gamma = 2.0;
};

/// Throws unless eps > 0, alpha >= 0, beta > 0, gamma > 1 (all finite).
void validate(const PressureParams&);

double background_pressure(double Z, const PressureParams&);
double background_pressure_derivative(double Z, const PressureParams&);

double singular_pressure(double Z, const PressureParams&);

/// d pi / d Z = eps [alpha Z^(alpha-1) (1-Z) + beta Z^alpha] / (1-Z)^(beta+1).
/// Z = 0 is allowed only when alpha >= 1.
double singular_pressure_derivative(double Z, const PressureParams&);

/// Unique Z in [0, 1) with singular_pressure(Z) = pi_value. Rejects negative input.
/// alpha = beta = 2 uses the exact inverse Z = s / (1 + s), s = sqrt(pi_value / eps);
/// other exponents run a bracketed Newton iteration. Nonnegative values below pi(0)
/// clamp to 0, values past pi(1 - 1e-15) saturate there.
double invert_singular_pressure(double pi_value, const PressureParams&);

/// Gamma(Z) = integral_0^Z (pi(s) + p(s)) / s^2 ds, the potential part of the energy
/// density. Requires alpha >= 2 and gamma >= 2 so the integrand stays bounded at 0.
double energy_potential(double Z, const PressureParams&);

/// Adaptive-Simpson path used when no elementary primitive applies; exposed for testing.
double energy_potential_quadrature(double Z, const PressureParams&);

}  // namespace crowdflow
