#pragma once

#include <array>
#include <span>
#include <vector>

#include "schamel/elliptic.hpp"
#include "schamel/wave.hpp"

namespace schamel::stability {

// The eleven polynomial-plus-radical coefficient functions entering the
// closed-form k-derivatives below; p(1) .. p(11) stored at indices 0 .. 10.
std::array<double, 11> p_polynomials(elliptic::Modulus k);

// Independent second transcription of the same functions (Horner on the
// expanded coefficient arrays); the test suite cross-asserts the two.
std::array<double, 11> p_polynomials_alternate(elliptic::Modulus k);

struct MFunctions {
  double m1, m2, m3, m4;
};
MFunctions m_functions(elliptic::Modulus k);

// Closed forms for the conserved-quantity factors at (L, k):
//   V(phi) = c^2 g1,  Q(phi) = c^4 g2,  A = c^3 g3,  2 g2 = s1 + s2,
// where s1 and s2 carry the integrals of phi^2 and (phi')^2.
struct GFunctions {
  double g1, g2, g3, s1, s2;
};
GFunctions g_functions(double L, elliptic::Modulus k);

// Closed-form k-derivatives of the factors above. The prefactors carry
// 1/(k(k^2-1)), so the modulus is restricted to (0.01, 0.99).
struct GDerivatives {
  double dg1, dg3, ds1, ds2, dg2;
};
GDerivatives g_derivatives(double L, elliptic::Modulus k);

// The three positivity witnesses of the stability functional and the
// period-free reduction r(k) of the f2 > 0 condition:
//   f1 = 4 g2 + 6 g1 g3, f2 = g2' + 3 g3 g1' + 2 g1 g3', f3 = g1' g3',
//   r  = 16 pi^2 m1/9 - 32 m2 K^2/7 - 160 m3 K^2/9 + 640 m4 K^2/9.
struct FAndR {
  double f1, f2, f3, r;
};
FAndR f_and_r(const WaveParams& p);

// The combination whose negativity is equivalent to f2 > 0 at period L;
// r(k) above is this expression with L^2 frozen at its infimum 16 pi^2.
double f2_sign_witness(double L, elliptic::Modulus k);

// Phi = < L_k d(phi_k)/dk , d(phi_k)/dk >, from the closed forms:
// -Phi = f1 c^3 (c')^2 + f2 c^4 c' + f3 c^5.
double phi_analytic(const WaveParams& p);

// Same pairing evaluated numerically: d(phi_k)/dk by central differences at
// fixed period, the operator applied spectrally, trapezoid pairing.
double phi_numeric(const WaveParams& p, int grid_n = 512, double dk = 1e-5);

// -Phi as the pairing of the constrained-functional gradient with the
// family derivative: (c' (phi - phi'') + A', d(phi_k)/dk).
double phi_gradient_route(const WaveParams& p, int grid_n = 512, double dk = 1e-5);

// -Phi as c' d/dk Q(phi_k) + A' d/dk V(phi_k) with the conserved quantities
// evaluated by quadrature and differenced in k.
double phi_conserved_route(const WaveParams& p, int grid_n = 512, double dk = 1e-5);

// C_{2n} = integral over one period of cn^{2n}(2Kx/L), n = 1 .. n_max <= 5,
// from the closed forms for the first two and the three-term recursion.
std::vector<double> cn_power_integrals(const WaveParams& p, int n_max);

struct ConservedIntegrals {
  double v_int;     // integral of phi
  double phi2_int;  // integral of phi^2
  double dphi_int;  // integral of (phi')^2
};
// The three integrals from the cn-power expansions (no quadrature).
ConservedIntegrals conserved_representations(const WaveParams& p);

// M_k(u) = c'(k) Q(u) + A'(k) V(u); evaluated at the wave itself via the
// closed forms, or at an arbitrary sampled L-periodic field.
double M_functional(const WaveParams& p);
double M_functional(const WaveParams& p, std::span<const double> field);

// Conserved functionals of a sampled L-periodic field (spectral derivative,
// trapezoid quadrature). E uses sgn(u)|u|^{5/2}.
struct ConservedValues {
  double E, Q, V;
};
ConservedValues conserved_at(std::span<const double> field, double L);

struct StabilityReport {
  double g1, g2, g3, s1, s2;
  double dg1, dg3, ds1, ds2, dg2;
  double f1, f2, f3, r;
  double m1, m2, m3, m4;
  double phi_analytic, phi_numeric;
  double M_value;
  double E_val, Q_val, V_val;
  bool phi_negative, f_positive, r_negative, m1_negative, M_positive;
  bool all_ok() const {
    return phi_negative && f_positive && r_negative && m1_negative && M_positive;
  }
};

StabilityReport report(const WaveParams& p, int grid_n = 512);

}  // namespace schamel::stability
