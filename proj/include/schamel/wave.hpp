#pragma once

#include "schamel/elliptic.hpp"

namespace schamel {

// All scalars describing one L-periodic cnoidal wave of the family.
// Immutable after construction through params_from_modulus; every operation
// below is a pure function of its arguments.
struct WaveParams {
  double L;      // spatial period, > 4*pi
  double k;      // elliptic modulus, in (0, k_max)
  double k_max;  // maximal admissible modulus for this period
  double c;      // wave speed, > 1
  double A;      // first integration constant of the profile equation
  double B;      // second integration constant, always 0 for this family
  double beta1, beta2, beta3;  // cubic roots, beta1 < 0 < beta2 < beta3
  double a;      // amplitude factor: sqrt(phi) = a (b + cn^2)
  double b;      // offset factor
  double eta;    // spatial scale L / (2 K(k))
};

// Unique k in (0,1) with 64 K^2(k) sqrt(k^4-k^2+1) = L^2 (bisection on the
// strictly increasing left side). Requires L > 4*pi.
double max_modulus(double L);

// Build the full parameter set at (L, k). Requires L > 4*pi and
// 1e-3 <= k < max_modulus(L); the lower floor guards the b ~ O(k^-2)
// cancellation.
WaveParams params_from_modulus(double L, double k);

struct RootPair {
  double beta1, beta3, delta;
};

// The remaining two roots given speed and middle root, via the resolvent
// quadratic. Requires c > 1 and 0 < beta2 < 5(c-1)/6.
RootPair roots_from_speed_beta2(double c, double beta2);

struct PeriodModulus {
  double T, k;
};

// Fundamental period and modulus of the wave with speed c and middle root
// beta2 (the inverse direction of params_from_modulus).
PeriodModulus period_and_modulus(double c, double beta2);

struct ProfileValues {
  double phi, psi;  // phi = psi^2 >= beta2^2 > 0
};

ProfileValues profile(const WaveParams& p, double x);

// d(phi)/dx in closed form.
double profile_derivative(const WaveParams& p, double x);

struct OdeResiduals {
  double res_el;    // sup | -c phi'' + (c-1) phi - phi^{3/2} + A |
  double res_quad;  // sup | (1-c)/2 phi^2 + c/2 (phi')^2 + 2/5 phi^{5/2} - A phi |
  double res_psi;   // sup | (psi')^2 - (1/5c)(psi-b1)(psi-b2)(b3-psi) |
};

// Residuals of the profile equation and its first integrals on an n-point
// uniform grid, with derivatives from the trigonometric interpolant.
OdeResiduals ode_residual(const WaveParams& p, int n_samples);

struct SpeedDerivatives {
  double dc_dk, dA_dk;
};

// Closed-form k-derivatives of the speed and of the integration constant at
// fixed period (no finite differences).
SpeedDerivatives dparams_dk(const WaveParams& p);

}  // namespace schamel
