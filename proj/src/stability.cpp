#include "schamel/stability.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "schamel/fourier.hpp"

namespace schamel::stability {

namespace {

constexpr double kPi = std::numbers::pi;

double sqrt_quartic(double k) { return std::sqrt(k * k * k * k - k * k + 1.0); }

double horner(std::span<const double> coeff, double x) {
  double acc = 0.0;
  for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) acc = acc * x + *it;
  return acc;
}

struct KePair {
  double K, E, s, k, x;  // x = k^2
};

KePair ke(elliptic::Modulus km) {
  const double k = km.value();
  return {elliptic::complete_K(km), elliptic::complete_E(km), sqrt_quartic(k), k, k * k};
}

// First bracket of g1 (and first factor of m4): carries K and E.
double bracket_g1(const KePair& q) {
  return ((q.x * q.x - q.x + 1.0) + (q.x - 2.0) * q.s) * q.K + 3.0 * q.s * q.E;
}

// Bracket of g3 (and first factor of m3): polynomial plus radical only.
double bracket_g3(const KePair& q) {
  const double x = q.x;
  return 2.0 * x * x * x - 3.0 * x * x - 3.0 * x + 2.0 + (2.0 * x * x - 2.0 * x + 2.0) * q.s;
}

double bracket_s1(const KePair& q) {
  const double x = q.x;
  return (100.0 - 200.0 * x + 225.0 * x * x - 125.0 * x * x * x + 70.0 * x * x * x * x) * q.K +
         (70.0 * x * x * x - 252.0 * x * x + 336.0 * x - 224.0) * q.s * q.K +
         (-30.0 * x * x * x + 45.0 * x * x + 45.0 * x - 30.0) * q.E +
         (294.0 * x * x - 294.0 * x + 294.0) * q.s * q.E;
}

double bracket_s2(const KePair& q) {
  const double x = q.x;
  return (7.0 * x * x * x * x - 28.0 * x * x * x + 42.0 * x * x - 35.0 * x + 14.0) * q.K +
         (-5.0 * x * x * x - 5.0 * x * x + 20.0 * x - 10.0) * q.s * q.K +
         (-14.0 * x * x * x * x + 28.0 * x * x * x - 42.0 * x * x + 28.0 * x - 14.0) * q.E +
         (10.0 * x * x * x - 15.0 * x * x - 15.0 * x + 10.0) * q.s * q.E;
}

void require_derivative_band(double k) {
  if (!(k > 0.01 && k < 0.99)) {
    throw std::domain_error("modulus outside the derivative band (0.01, 0.99)");
  }
}

std::vector<double> sample_phi(const WaveParams& p, int n) {
  std::vector<double> out(n);
  for (int j = 0; j < n; ++j) out[j] = profile(p, p.L * j / n).phi;
  return out;
}

}  // namespace

std::array<double, 11> p_polynomials(elliptic::Modulus km) {
  const double k = km.value();
  const double s = sqrt_quartic(k);
  const double k2 = k * k, k4 = k2 * k2, k6 = k4 * k2, k8 = k6 * k2, k10 = k8 * k2;
  std::array<double, 11> p{};
  p[0] = (2 * k6 - 7 * k4 + 10 * k2 - 5) + (2 * k4 - 6 * k2 + 4) * s;
  p[1] = (-4 * k6 + 15 * k4 - 21 * k2 + 14) + (-4 * k4 + 4 * k2 - 4) * s;
  p[2] = -9 * k4 + 9 * k2 - 9;
  p[3] = (-k8 + 4 * k6 - 6 * k4 + 5 * k2 - 2) + (-k6 - k4 + 4 * k2 - 2) * s;
  p[4] = (2 * k8 - 4 * k6 + 6 * k4 - 4 * k2 + 2) + (2 * k6 - 3 * k4 - 3 * k2 + 2) * s;
  p[5] = (40 * k10 - 276 * k8 + 686 * k6 - 878 * k4 + 642 * k2 - 214) +
         (40 * k8 - 175 * k6 + 300 * k4 - 275 * k2 + 110) * s;
  p[6] = (-80 * k10 + 494 * k8 - 1256 * k6 + 1684 * k4 - 1270 * k2 + 508) +
         (-80 * k8 + 130 * k6 - 270 * k4 + 280 * k2 - 140) * s;
  p[7] = (-294 * k8 + 588 * k6 - 882 * k4 + 588 * k2 - 294) +
         (30 * k6 - 45 * k4 - 45 * k2 + 30) * s;
  p[8] = (10 * k10 - 55 * k8 + 125 * k6 - 155 * k4 + 105 * k2 - 30) +
         (28 * k8 - 98 * k6 + 154 * k4 - 126 * k2 + 42) * s;
  p[9] = (30 * k10 - 15 * k8 - 90 * k6 + 195 * k4 - 180 * k2 + 60) +
         (-42 * k8 + 168 * k6 - 252 * k4 + 210 * k2 - 84) * s;
  p[10] = (-30 * k10 + 75 * k8 - 30 * k6 - 30 * k4 + 75 * k2 - 30) +
          (42 * k8 - 84 * k6 + 126 * k4 - 84 * k2 + 42) * s;
  return p;
}

std::array<double, 11> p_polynomials_alternate(elliptic::Modulus km) {
  const double k = km.value();
  const double s = sqrt_quartic(k);
  const double x = k * k;
  // Ascending coefficients in x = k^2: plain part, then radical multiplier.
  static constexpr std::array<std::array<std::array<double, 6>, 2>, 11> kCoef{{
      {{{{-5, 10, -7, 2, 0, 0}}, {{4, -6, 2, 0, 0, 0}}}},
      {{{{14, -21, 15, -4, 0, 0}}, {{-4, 4, -4, 0, 0, 0}}}},
      {{{{-9, 9, -9, 0, 0, 0}}, {{0, 0, 0, 0, 0, 0}}}},
      {{{{-2, 5, -6, 4, -1, 0}}, {{-2, 4, -1, -1, 0, 0}}}},
      {{{{2, -4, 6, -4, 2, 0}}, {{2, -3, -3, 2, 0, 0}}}},
      {{{{-214, 642, -878, 686, -276, 40}}, {{110, -275, 300, -175, 40, 0}}}},
      {{{{508, -1270, 1684, -1256, 494, -80}}, {{-140, 280, -270, 130, -80, 0}}}},
      {{{{-294, 588, -882, 588, -294, 0}}, {{30, -45, -45, 30, 0, 0}}}},
      {{{{-30, 105, -155, 125, -55, 10}}, {{42, -126, 154, -98, 28, 0}}}},
      {{{{60, -180, 195, -90, -15, 30}}, {{-84, 210, -252, 168, -42, 0}}}},
      {{{{-30, 75, -30, -30, 75, -30}}, {{42, -84, 126, -84, 42, 0}}}},
  }};
  std::array<double, 11> p{};
  for (int i = 0; i < 11; ++i) {
    p[i] = horner(kCoef[i][0], x) + horner(kCoef[i][1], x) * s;
  }
  return p;
}

MFunctions m_functions(elliptic::Modulus km) {
  const KePair q = ke(km);
  const auto p = p_polynomials(km);
  MFunctions m{};
  m.m1 = p[5] * q.K * q.K + p[6] * q.E * q.K + p[7] * q.E * q.E;
  m.m2 = p[8] * q.K * q.K + p[9] * q.E * q.K + p[10] * q.E * q.E;
  m.m3 = bracket_g3(q) * (p[0] * q.K * q.K + p[1] * q.E * q.K + p[2] * q.E * q.E);
  m.m4 = bracket_g1(q) * (p[3] * q.K + p[4] * q.E);
  return m;
}

GFunctions g_functions(double L, elliptic::Modulus km) {
  const KePair q = ke(km);
  const double L3 = L * L * L, L6 = L3 * L3, L7 = L6 * L, L9 = L6 * L3;
  const double K3 = q.K * q.K * q.K, K6 = K3 * K3, K7 = K6 * q.K, K9 = K6 * K3;
  GFunctions g{};
  g.g1 = 12800.0 * K3 / (9.0 * L3) * bracket_g1(q);
  g.g3 = -204800.0 * K6 / (27.0 * L6) * bracket_g3(q);
  g.s1 = 32768000.0 * K7 / (567.0 * L7) * bracket_s1(q);
  g.s2 = -1048576000.0 * K9 / (189.0 * L9) * bracket_s2(q);
  g.g2 = 0.5 * (g.s1 + g.s2);
  return g;
}

GDerivatives g_derivatives(double L, elliptic::Modulus km) {
  require_derivative_band(km.value());
  const KePair q = ke(km);
  const auto p = p_polynomials(km);
  const double L3 = L * L * L, L6 = L3 * L3, L7 = L6 * L, L9 = L6 * L3;
  const double K2 = q.K * q.K, K5 = K2 * K2 * q.K, K6 = K5 * q.K, K8 = K6 * K2;
  const double den = q.k * (q.k * q.k - 1.0) * q.s;
  GDerivatives d{};
  d.dg1 = 12800.0 * K2 / (9.0 * L3 * den) *
          (p[0] * K2 + p[1] * q.E * q.K + p[2] * q.E * q.E);
  d.dg3 = 409600.0 * K5 / (9.0 * L6 * den) * (p[3] * q.K + p[4] * q.E);
  d.ds1 = 32768000.0 * K6 / (81.0 * L7 * den) *
          (p[5] * K2 + p[6] * q.E * q.K + p[7] * q.E * q.E);
  d.ds2 = -1048576000.0 * K8 / (63.0 * L9 * den) *
          (p[8] * K2 + p[9] * q.E * q.K + p[10] * q.E * q.E);
  d.dg2 = 0.5 * (d.ds1 + d.ds2);
  return d;
}

double f2_sign_witness(double L, elliptic::Modulus km) {
  const MFunctions m = m_functions(km);
  const double K2 = std::pow(elliptic::complete_K(km), 2);
  return L * L * m.m1 / 9.0 - 32.0 * m.m2 * K2 / 7.0 - 160.0 * m.m3 * K2 / 9.0 +
         640.0 * m.m4 * K2 / 9.0;
}

FAndR f_and_r(const WaveParams& p) {
  const elliptic::Modulus km(p.k);
  const GFunctions g = g_functions(p.L, km);
  const GDerivatives d = g_derivatives(p.L, km);
  FAndR f{};
  f.f1 = 4.0 * g.g2 + 6.0 * g.g1 * g.g3;
  f.f2 = d.dg2 + 3.0 * g.g3 * d.dg1 + 2.0 * g.g1 * d.dg3;
  f.f3 = d.dg1 * d.dg3;
  f.r = f2_sign_witness(4.0 * kPi, km);
  return f;
}

double phi_analytic(const WaveParams& p) {
  const FAndR f = f_and_r(p);
  const double dc = dparams_dk(p).dc_dk;
  const double c = p.c;
  return -(f.f1 * c * c * c * dc * dc + f.f2 * c * c * c * c * dc +
           f.f3 * c * c * c * c * c);
}

namespace {

std::vector<double> family_derivative(const WaveParams& p, int n, double dk) {
  const WaveParams hi = params_from_modulus(p.L, p.k + dk);
  const WaveParams lo = params_from_modulus(p.L, p.k - dk);
  std::vector<double> out(n);
  for (int j = 0; j < n; ++j) {
    const double x = p.L * j / n;
    out[j] = (profile(hi, x).phi - profile(lo, x).phi) / (2.0 * dk);
  }
  return out;
}

}  // namespace

double phi_numeric(const WaveParams& p, int grid_n, double dk) {
  const int n = grid_n;
  const std::vector<double> v = family_derivative(p, n, dk);
  const std::vector<double> v2 = fourier::spectral_derivative(v, p.L, 2);
  std::vector<double> integrand(n);
  for (int j = 0; j < n; ++j) {
    const double psi = profile(p, p.L * j / n).psi;
    const double Lv = -p.c * v2[j] + ((p.c - 1.0) - 1.5 * psi) * v[j];
    integrand[j] = v[j] * Lv;
  }
  return fourier::integrate(integrand, p.L);
}

double phi_gradient_route(const WaveParams& p, int grid_n, double dk) {
  const int n = grid_n;
  const std::vector<double> v = family_derivative(p, n, dk);
  std::vector<double> phi(n);
  for (int j = 0; j < n; ++j) phi[j] = profile(p, p.L * j / n).phi;
  const std::vector<double> phixx = fourier::spectral_derivative(phi, p.L, 2);
  const auto d = dparams_dk(p);
  std::vector<double> integrand(n);
  for (int j = 0; j < n; ++j) {
    integrand[j] = (d.dc_dk * (phi[j] - phixx[j]) + d.dA_dk) * v[j];
  }
  return -fourier::integrate(integrand, p.L);
}

double phi_conserved_route(const WaveParams& p, int grid_n, double dk) {
  const WaveParams hi = params_from_modulus(p.L, p.k + dk);
  const WaveParams lo = params_from_modulus(p.L, p.k - dk);
  const auto chi = conserved_at(sample_phi(hi, grid_n), p.L);
  const auto clo = conserved_at(sample_phi(lo, grid_n), p.L);
  const auto d = dparams_dk(p);
  const double dQ = (chi.Q - clo.Q) / (2.0 * dk);
  const double dV = (chi.V - clo.V) / (2.0 * dk);
  return -(d.dc_dk * dQ + d.dA_dk * dV);
}

std::vector<double> cn_power_integrals(const WaveParams& p, int n_max) {
  if (n_max < 1 || n_max > 5) {
    throw std::invalid_argument("cn power order must lie in 1..5");
  }
  const elliptic::Modulus km(p.k);
  // The seeds cancel heavily and every recursion level divides by k^2, so
  // the whole chain runs in extended precision.
  const auto [K, E] = elliptic::detail::complete_KE_long(km);
  const long double k2 = static_cast<long double>(p.k) * p.k;
  std::array<long double, 6> ct{};  // ct[n] = integral of cn^{2n} over [0, K]
  ct[0] = K;
  ct[1] = (E - (1.0L - k2) * K) / k2;
  ct[2] = ((2.0L - 3.0L * k2) * (1.0L - k2) * K + 2.0L * (2.0L * k2 - 1.0L) * E) /
          (3.0L * k2 * k2);
  for (int n = 2; n <= 4; ++n) {
    ct[n + 1] = (2.0L * n * (2.0L * k2 - 1.0L) * ct[n] +
                 (2.0L * n - 1.0L) * (1.0L - k2) * ct[n - 1]) /
                ((2.0L * n + 1.0L) * k2);
  }
  std::vector<double> out(n_max);
  for (int n = 1; n <= n_max; ++n) {
    out[n - 1] = static_cast<double>(static_cast<long double>(p.L) / K * ct[n]);
  }
  return out;
}

ConservedIntegrals conserved_representations(const WaveParams& p) {
  const auto C = cn_power_integrals(p, 5);
  const double C2 = C[0], C4 = C[1], C6 = C[2], C8 = C[3], C10 = C[4];
  const double a2 = p.a * p.a, a4 = a2 * a2, b = p.b, k2 = p.k * p.k;
  const double K = elliptic::complete_K(elliptic::Modulus(p.k));
  ConservedIntegrals r{};
  r.v_int = a2 * (b * b * p.L + 2.0 * b * C2 + C4);
  r.phi2_int = a4 * (b * b * b * b * p.L + 4.0 * b * b * b * C2 + 6.0 * b * b * C4 +
                     4.0 * b * C6 + C8);
  r.dphi_int = 64.0 * a4 * K * K / (p.L * p.L) *
               (b * b * (1.0 - k2) * C2 +
                (2.0 * b * (1.0 - k2) + b * b * (2.0 * k2 - 1.0)) * C4 +
                ((1.0 - k2) - b * b * k2 + 2.0 * b * (2.0 * k2 - 1.0)) * C6 +
                ((2.0 * k2 - 1.0) - 2.0 * b * k2) * C8 - k2 * C10);
  return r;
}

ConservedValues conserved_at(std::span<const double> field, double L) {
  const std::vector<double> ux = fourier::spectral_derivative(field, L, 1);
  const int n = static_cast<int>(field.size());
  std::vector<double> e(n), q(n);
  for (int j = 0; j < n; ++j) {
    const double u = field[j];
    const double mag = std::fabs(u);
    e[j] = 0.5 * (ux[j] * ux[j] - 0.8 * (u < 0 ? -1.0 : (u > 0 ? 1.0 : 0.0)) * mag * mag * std::sqrt(mag));
    q[j] = 0.5 * (u * u + ux[j] * ux[j]);
  }
  ConservedValues out{};
  out.E = fourier::integrate(e, L);
  out.Q = fourier::integrate(q, L);
  out.V = fourier::integrate(field, L);
  return out;
}

double M_functional(const WaveParams& p) {
  const auto d = dparams_dk(p);
  const auto g = g_functions(p.L, elliptic::Modulus(p.k));
  const double c = p.c;
  return d.dc_dk * c * c * c * c * g.g2 + d.dA_dk * c * c * g.g1;
}

double M_functional(const WaveParams& p, std::span<const double> field) {
  const auto d = dparams_dk(p);
  const auto cv = conserved_at(field, p.L);
  return d.dc_dk * cv.Q + d.dA_dk * cv.V;
}

StabilityReport report(const WaveParams& p, int grid_n) {
  const elliptic::Modulus km(p.k);
  const GFunctions g = g_functions(p.L, km);
  const GDerivatives d = g_derivatives(p.L, km);
  const MFunctions m = m_functions(km);
  const FAndR f = f_and_r(p);

  StabilityReport r{};
  r.g1 = g.g1; r.g2 = g.g2; r.g3 = g.g3; r.s1 = g.s1; r.s2 = g.s2;
  r.dg1 = d.dg1; r.dg3 = d.dg3; r.ds1 = d.ds1; r.ds2 = d.ds2; r.dg2 = d.dg2;
  r.f1 = f.f1; r.f2 = f.f2; r.f3 = f.f3; r.r = f.r;
  r.m1 = m.m1; r.m2 = m.m2; r.m3 = m.m3; r.m4 = m.m4;
  r.phi_analytic = phi_analytic(p);
  r.phi_numeric = phi_numeric(p, grid_n);
  r.M_value = M_functional(p);
  const auto cons = conserved_at(sample_phi(p, grid_n), p.L);
  r.E_val = cons.E;
  r.Q_val = p.c * p.c * p.c * p.c * g.g2;
  r.V_val = p.c * p.c * g.g1;
  r.phi_negative = r.phi_analytic < 0.0;
  r.f_positive = f.f1 > 0.0 && f.f2 > 0.0 && f.f3 > 0.0;
  r.r_negative = f.r < 0.0;
  r.m1_negative = m.m1 < 0.0;
  r.M_positive = r.M_value > 0.0;
  return r;
}

}  // namespace schamel::stability
