#pragma once

#include <array>

#include "schamel/elliptic.hpp"
#include "schamel/wave.hpp"

namespace schamel::lame {

// Roots of the characteristic quadratic of the odd cn*dn*(sn + D3 sn^3)
// family: h^2 - 20(1+k^2) h + 64(1+k^2)^2 + 108 k^2 = 0, h1 > h2.
struct QuadraticRoots {
  double h1, h2;
};
QuadraticRoots quadratic_roots(elliptic::Modulus k);

// Roots of the characteristic cubic of the even dn(1 + C2 sn^2 + C4 sn^4)
// family, by the trigonometric method, returned as h3 < h4 < h5.
struct CubicRoots {
  double h3, h4, h5;
};
CubicRoots cubic_roots(elliptic::Modulus k);

// Coefficients of the cubic h^3 + z1 h^2 + z2 h + z3 = 0.
struct CubicCoefficients {
  double z1, z2, z3;
};
CubicCoefficients cubic_coefficients(elliptic::Modulus k);

enum class Family { OddSn, EvenDn };

// One eigenvalue of the rescaled periodic problem with its polynomial
// coefficients and the zero count of the eigenfunction over one period.
struct Eigenpair {
  double h;
  Family family;
  double D3;      // odd family: cn dn (sn + D3 sn^3)
  double C2, C4;  // even family: dn (1 + C2 sn^2 + C4 sn^4)
  int zero_count;
};

// The five lowest eigenvalues of the linearized operator, ascending, with
// the matched characteristic roots in the order (h3, h2, h4, h1, h5).
struct OperatorSpectrum {
  std::array<double, 5> lambda;
  std::array<double, 5> h;
  double eta;
};

OperatorSpectrum operator_eigenvalues(const WaveParams& p);

Eigenpair eigenpair(int index, const WaveParams& p);

// chi_index evaluated at x (not normalized).
double eigenfunction(int index, const WaveParams& p, double x);

// The constant relating the zero-mode to the profile derivative:
// chi_1 = C0 phi', C0 = -L / (8 a^2 (b+1) K(k)).
double phi_prime_constant(const WaveParams& p);

}  // namespace schamel::lame
