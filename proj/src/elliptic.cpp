#include "schamel/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace schamel::elliptic {

namespace {

constexpr long double kPi = 3.141592653589793238462643383279502884L;

struct AgmTail {
  long double agm;   // common limit of the a/b sequences
  long double csum;  // sum 2^{n-1} c_n^2, n >= 0
};

AgmTail run_agm(long double k) {
  long double a = 1.0L;
  long double b = std::sqrt((1.0L - k) * (1.0L + k));
  long double c = k;
  long double csum = 0.5L * c * c;
  long double w = 0.5L;
  for (int n = 0; n < 64 && std::fabs(c) > 1e-22L * a; ++n) {
    const long double an = 0.5L * (a + b);
    c = 0.5L * (a - b);
    b = std::sqrt(a * b);
    a = an;
    w *= 2.0L;
    csum += w * c * c;
  }
  return {a, csum};
}

}  // namespace

Modulus::Modulus(double k) : k_(k) {
  if (!(k > 0.0) || !(k < 1.0 - 1e-12)) {
    throw std::domain_error("elliptic modulus must lie in (0, 1 - 1e-12)");
  }
}

double complete_K(Modulus k) {
  return static_cast<double>(kPi / (2.0L * run_agm(k.value()).agm));
}

double complete_E(Modulus k) {
  const AgmTail t = run_agm(k.value());
  const long double K = kPi / (2.0L * t.agm);
  return static_cast<double>(K * (1.0L - t.csum));
}

JacobiValues jacobi(double u, Modulus km) {
  const double k = km.value();
  const double kp2 = (1.0 - k) * (1.0 + k);
  const double K = complete_K(km);

  // sn and cn have period 4K and flip sign across a half period; dn has
  // period 2K. Reduce to [0, 2K) and restore signs at the end.
  double ur = std::fmod(u, 4.0 * K);
  if (ur < 0.0) ur += 4.0 * K;
  double sign = 1.0;
  if (ur >= 2.0 * K) {
    ur -= 2.0 * K;
    sign = -1.0;
  }

  // Descending Landen scale.
  double a[64], c[64];
  a[0] = 1.0;
  c[0] = k;
  double b = std::sqrt(kp2);
  int n = 0;
  while (n < 62 && std::fabs(c[n]) > 1e-17 * a[n]) {
    const double an = 0.5 * (a[n] + b);
    const double cn1 = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    ++n;
    a[n] = an;
    c[n] = cn1;
  }

  // Backward recurrence for the amplitude.
  double phi = std::ldexp(a[n] * ur, n);
  for (int i = n; i >= 1; --i) {
    const double s = std::clamp(c[i] / a[i] * std::sin(phi), -1.0, 1.0);
    phi = 0.5 * (phi + std::asin(s));
  }

  const double sn = sign * std::sin(phi);
  const double cn = sign * std::cos(phi);
  // dn^2 = k'^2 + k^2 cn^2 avoids the cancellation in 1 - k^2 sn^2 near
  // u = K for moduli close to 1.
  const double dn = std::sqrt(kp2 + k * k * cn * cn);
  return {sn, cn, dn};
}

detail::KeLong detail::complete_KE_long(Modulus k) {
  const AgmTail t = run_agm(k.value());
  const long double K = kPi / (2.0L * t.agm);
  return {K, K * (1.0L - t.csum)};
}

KEDerivatives derivatives(Modulus km) {
  const double k = km.value();
  const double K = complete_K(km);
  const double E = complete_E(km);
  const double kp2 = (1.0 - k) * (1.0 + k);
  return {(E - kp2 * K) / (k * kp2), (E - K) / k};
}

}  // namespace schamel::elliptic
