#include "schamel/wave.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "schamel/fourier.hpp"
#include "schamel/stability.hpp"

namespace schamel {

namespace {

constexpr double kPi = std::numbers::pi;

double sqrt_quartic(double k) { return std::sqrt(k * k * k * k - k * k + 1.0); }

// g(k) = 64 K^2(k) sqrt(k^4 - k^2 + 1); strictly increasing from 16 pi^2.
double period_square(double k) {
  const double K = elliptic::complete_K(elliptic::Modulus(k));
  return 64.0 * K * K * sqrt_quartic(k);
}

void require_period(double L) {
  if (!(L > 4.0 * kPi)) {
    throw std::domain_error("period must exceed 4*pi");
  }
}

}  // namespace

double max_modulus(double L) {
  require_period(L);
  const double target = L * L;
  double lo = 1e-9;
  double hi = 1.0 - 2e-12;
  if (period_square(hi) <= target) {
    throw std::domain_error("period too large for the double-precision modulus band");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    (period_square(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

WaveParams params_from_modulus(double L, double k) {
  require_period(L);
  if (!(k >= 1e-3)) {
    throw std::domain_error("modulus below the 1e-3 floor");
  }
  const elliptic::Modulus km(k);
  const double K = elliptic::complete_K(km);
  const double s = sqrt_quartic(k);
  const double mt = L * L - 64.0 * K * K * s;
  if (!(mt > 0.0)) {
    throw std::domain_error("modulus at or above the maximal value for this period");
  }

  WaveParams p{};
  p.L = L;
  p.k = k;
  p.k_max = max_modulus(L);
  p.c = L * L / mt;
  p.a = 80.0 * k * k * K * K / mt;
  p.b = (s - 2.0 * k * k + 1.0) / (3.0 * k * k);
  p.beta2 = p.a * p.b;
  p.beta3 = p.a * (p.b + 1.0);
  p.beta1 = 1.25 * (p.c - 1.0) - p.beta2 - p.beta3;
  const double u = s - (2.0 * k * k - 1.0);
  const double v = 2.0 * s + (2.0 * k * k - 1.0);
  p.A = -204800.0 * std::pow(K, 6) / (27.0 * mt * mt * mt) * u * u * v;
  p.B = 0.0;
  p.eta = L / (2.0 * K);

  if (!(p.beta1 < 0.0 && p.beta2 > 0.0 && p.beta2 < p.beta3)) {
    throw std::logic_error("root ordering violated");
  }
  return p;
}

RootPair roots_from_speed_beta2(double c, double beta2) {
  if (!(c > 1.0)) {
    throw std::domain_error("wave speed must exceed 1");
  }
  const double q = 1.25 * (c - 1.0);
  if (!(beta2 > 0.0 && beta2 < 5.0 * (c - 1.0) / 6.0)) {
    throw std::domain_error("beta2 outside (0, 5(c-1)/6)");
  }
  const double delta = (beta2 - q) * (beta2 - q) - 4.0 * (beta2 * beta2 - q * beta2);
  const double beta3 = 0.5 * (q - beta2) + 0.5 * std::sqrt(delta);
  const double beta1 = q - beta2 - beta3;
  return {beta1, beta3, delta};
}

PeriodModulus period_and_modulus(double c, double beta2) {
  const RootPair r = roots_from_speed_beta2(c, beta2);
  const double k =
      std::sqrt((5.0 * (c - 1.0) - 12.0 * beta2) / (8.0 * std::sqrt(r.delta)) + 0.5);
  const double T = 4.0 * std::sqrt(5.0 * c) / std::pow(r.delta, 0.25) *
                   elliptic::complete_K(elliptic::Modulus(k));
  return {T, k};
}

ProfileValues profile(const WaveParams& p, double x) {
  const auto j = elliptic::jacobi(x / p.eta, elliptic::Modulus(p.k));
  const double psi = p.a * (p.b + j.cn * j.cn);
  return {psi * psi, psi};
}

double profile_derivative(const WaveParams& p, double x) {
  const auto j = elliptic::jacobi(x / p.eta, elliptic::Modulus(p.k));
  const double psi = p.a * (p.b + j.cn * j.cn);
  const double dpsi = -2.0 * p.a * j.cn * j.sn * j.dn / p.eta;
  return 2.0 * psi * dpsi;
}

OdeResiduals ode_residual(const WaveParams& p, int n_samples) {
  if (n_samples < 64 || n_samples % 2 != 0) {
    throw std::invalid_argument("sample count must be even and >= 64");
  }
  const int n = n_samples;
  std::vector<double> phi(n), psi(n), dpsi_exact(n);
  for (int j = 0; j < n; ++j) {
    const double x = p.L * j / n;
    const auto jac = elliptic::jacobi(x / p.eta, elliptic::Modulus(p.k));
    psi[j] = p.a * (p.b + jac.cn * jac.cn);
    phi[j] = psi[j] * psi[j];
    dpsi_exact[j] = -2.0 * p.a * jac.cn * jac.sn * jac.dn / p.eta;
  }
  const std::vector<double> d1 = fourier::spectral_derivative(phi, p.L, 1);
  const std::vector<double> d2 = fourier::spectral_derivative(phi, p.L, 2);

  OdeResiduals r{0.0, 0.0, 0.0};
  for (int j = 0; j < n; ++j) {
    const double el =
        -p.c * d2[j] + (p.c - 1.0) * phi[j] - std::pow(phi[j], 1.5) + p.A;
    const double quad = 0.5 * (1.0 - p.c) * phi[j] * phi[j] +
                        0.5 * p.c * d1[j] * d1[j] +
                        0.4 * std::pow(phi[j], 2.5) - p.A * phi[j];
    const double cubic = (psi[j] - p.beta1) * (psi[j] - p.beta2) * (p.beta3 - psi[j]);
    const double psir = dpsi_exact[j] * dpsi_exact[j] - cubic / (5.0 * p.c);
    r.res_el = std::max(r.res_el, std::fabs(el));
    r.res_quad = std::max(r.res_quad, std::fabs(quad));
    r.res_psi = std::max(r.res_psi, std::fabs(psir));
  }
  return r;
}

SpeedDerivatives dparams_dk(const WaveParams& p) {
  const elliptic::Modulus km(p.k);
  const double K = elliptic::complete_K(km);
  const double s = sqrt_quartic(p.k);
  const double mt = p.L * p.L - 64.0 * K * K * s;
  const auto d = elliptic::derivatives(km);
  const double ds = p.k * (2.0 * p.k * p.k - 1.0) / s;
  const double dmt = -64.0 * (2.0 * K * d.dK_dk * s + K * K * ds);
  const double dc = -p.L * p.L * dmt / (mt * mt);

  const auto g = stability::g_functions(p.L, km);
  const auto gd = stability::g_derivatives(p.L, km);
  const double dA = 3.0 * p.c * p.c * dc * g.g3 + p.c * p.c * p.c * gd.dg3;
  return {dc, dA};
}

}  // namespace schamel
