#include "schamel/lame.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace schamel::lame {

namespace {

constexpr double kPi = std::numbers::pi;

double sqrt_quartic(double k) { return std::sqrt(k * k * k * k - k * k + 1.0); }

Eigenpair make_pair(double h, Family family, double k) {
  Eigenpair e{};
  e.h = h;
  e.family = family;
  if (family == Family::OddSn) {
    e.D3 = (4.0 * k * k + 4.0 - h) / 6.0;
    e.C2 = e.C4 = 0.0;
  } else {
    e.C2 = 0.5 * (k * k - h);
    e.C4 = (28.0 * k * k - e.C2 * (h - 4.0 - 9.0 * k * k)) / 12.0;
    e.D3 = 0.0;
  }
  return e;
}

double evaluate(const Eigenpair& e, const elliptic::JacobiValues& j) {
  const double sn2 = j.sn * j.sn;
  if (e.family == Family::OddSn) {
    return j.cn * j.dn * j.sn * (1.0 + e.D3 * sn2);
  }
  return j.dn * (1.0 + e.C2 * sn2 + e.C4 * sn2 * sn2);
}

int count_zeros(const Eigenpair& e, const WaveParams& p) {
  // Sign changes over one period, sampled off the symmetry points so that
  // no sample lands exactly on a zero.
  const int m = 4096;
  int count = 0;
  double prev = 0.0;
  double first = 0.0;
  for (int j = 0; j < m; ++j) {
    const double x = (j + 0.5) * p.L / m;
    const double v = evaluate(e, elliptic::jacobi(x / p.eta, elliptic::Modulus(p.k)));
    if (j == 0) {
      first = v;
    } else if (v * prev < 0.0) {
      ++count;
    }
    prev = v;
  }
  if (prev * first < 0.0) ++count;
  return count;
}

}  // namespace

QuadraticRoots quadratic_roots(elliptic::Modulus km) {
  const double k = km.value();
  const double s = sqrt_quartic(k);
  return {10.0 * (1.0 + k * k) + 6.0 * s, 10.0 * (1.0 + k * k) - 6.0 * s};
}

CubicCoefficients cubic_coefficients(elliptic::Modulus km) {
  const double x = km.value() * km.value();
  return {-(20.0 + 35.0 * x), 64.0 + 536.0 * x + 259.0 * x * x,
          -225.0 * x * x * x - 1860.0 * x * x - 960.0 * x};
}

CubicRoots cubic_roots(elliptic::Modulus km) {
  const auto [z1, z2, z3] = cubic_coefficients(km);
  const double disc = 3.0 * z2 - z1 * z1;  // negative on (0,1)
  const double q = 2.0 * std::sqrt(disc / -9.0);
  double arg = (2.0 * z1 * z1 * z1 - 9.0 * z1 * z2 + 27.0 * z3) / (6.0 * disc) *
               std::sqrt(-9.0 / disc);
  if (std::fabs(arg) > 1.0 + 1e-12) {
    throw std::runtime_error("cubic arccos argument outside [-1, 1]");
  }
  arg = std::clamp(arg, -1.0, 1.0);
  const double theta = std::acos(arg) / 3.0;
  // Newton polish in extended precision; h1 and h5 are k^6-close at small
  // modulus, so every extra digit of the cubic roots counts.
  auto polish = [&](double h0) {
    long double h = h0;
    for (int it = 0; it < 3; ++it) {
      const long double f = ((h + z1) * h + z2) * h + z3;
      const long double df = (3.0L * h + 2.0L * z1) * h + z2;
      if (df == 0.0L) break;
      h -= f / df;
    }
    return static_cast<double>(h);
  };
  CubicRoots r{};
  r.h3 = polish(q * std::cos(theta - 4.0 * kPi / 3.0) - z1 / 3.0);
  r.h4 = polish(q * std::cos(theta - 2.0 * kPi / 3.0) - z1 / 3.0);
  r.h5 = polish(q * std::cos(theta) - z1 / 3.0);
  return r;
}

OperatorSpectrum operator_eigenvalues(const WaveParams& p) {
  const elliptic::Modulus km(p.k);
  const auto quad = quadratic_roots(km);
  const auto cub = cubic_roots(km);
  const double K = elliptic::complete_K(km);
  const double s = sqrt_quartic(p.k);
  const double mt = p.L * p.L - 64.0 * K * K * s;
  const double pref = 4.0 * K * K / mt;
  const double shift = 6.0 * s - 10.0 * (p.k * p.k + 1.0);

  OperatorSpectrum out{};
  out.h = {cub.h3, quad.h2, cub.h4, quad.h1, cub.h5};
  for (int i = 0; i < 5; ++i) out.lambda[i] = pref * (out.h[i] + shift);
  out.eta = p.eta;
  // The interleaving is strict analytically; the h1/h5 pair separates only
  // at order k^6, so rounding-level ties are tolerated.
  for (int i = 0; i + 1 < 5; ++i) {
    if (!(out.h[i + 1] > out.h[i] - 64.0 * 1e-16 * std::fabs(out.h[i]))) {
      throw std::logic_error("characteristic roots out of order");
    }
  }
  return out;
}

Eigenpair eigenpair(int index, const WaveParams& p) {
  if (index < 0 || index > 4) {
    throw std::invalid_argument("eigenfunction index must lie in 0..4");
  }
  const auto spec = operator_eigenvalues(p);
  const Family fam = (index % 2 == 1) ? Family::OddSn : Family::EvenDn;
  Eigenpair e = make_pair(spec.h[static_cast<size_t>(index)], fam, p.k);
  e.zero_count = count_zeros(e, p);
  return e;
}

double eigenfunction(int index, const WaveParams& p, double x) {
  if (index < 0 || index > 4) {
    throw std::invalid_argument("eigenfunction index must lie in 0..4");
  }
  const auto spec = operator_eigenvalues(p);
  const Family fam = (index % 2 == 1) ? Family::OddSn : Family::EvenDn;
  const Eigenpair e = make_pair(spec.h[static_cast<size_t>(index)], fam, p.k);
  return evaluate(e, elliptic::jacobi(x / p.eta, elliptic::Modulus(p.k)));
}

double phi_prime_constant(const WaveParams& p) {
  const double K = elliptic::complete_K(elliptic::Modulus(p.k));
  return -p.L / (8.0 * p.a * p.a * (p.b + 1.0) * K);
}

}  // namespace schamel::lame
