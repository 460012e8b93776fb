#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "schamel/wave.hpp"

using namespace schamel;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("max_modulus: domain and oracle root") {
  CHECK_THROWS_AS(max_modulus(4.0 * kPi), std::domain_error);
  CHECK_THROWS_AS(max_modulus(10.0), std::domain_error);

  // g(0+) = 16 pi^2: a period slightly above 4 pi pins k_L near zero
  // (the approach is quartic: g - 16 pi^2 = O(k^4)).
  CHECK(max_modulus(4.0 * kPi + 1e-3) < 0.15);
  CHECK(max_modulus(4.0 * kPi + 1e-5) < max_modulus(4.0 * kPi + 1e-3));
  // g increases without bound: large periods push k_L toward 1.
  CHECK(max_modulus(40.0) > 0.999);
  CHECK(max_modulus(40.0) > max_modulus(20.0));

  // bisection oracle for L = 16 (200-iteration run, frozen)
  CHECK(max_modulus(16.0) == doctest::Approx(0.85158222145055726).epsilon(1e-12));
  // defining relation g(k_L) = L^2
  const double kl = max_modulus(16.0);
  const double K = elliptic::complete_K(elliptic::Modulus(kl));
  const double g = 64.0 * K * K * std::sqrt(kl * kl * kl * kl - kl * kl + 1.0);
  CHECK(g == doctest::Approx(256.0).epsilon(1e-12));
}

TEST_CASE("params_from_modulus: frozen reference case and domain") {
  const WaveParams p = params_from_modulus(16.0, 0.3);
  CHECK(p.c == doctest::Approx(2.6275500325111642).epsilon(1e-13));
  CHECK(p.A == doctest::Approx(-0.49157863326070219).epsilon(1e-12));
  CHECK(p.a == doctest::Approx(0.19109172323404701).epsilon(1e-13));
  CHECK(p.b == doctest::Approx(6.5858346270250988).epsilon(1e-13));
  CHECK(p.beta3 == doctest::Approx(1.4495902110467309).epsilon(1e-13));
  CHECK(p.B == 0.0);

  CHECK_THROWS_AS(params_from_modulus(12.0, 0.3), std::domain_error);
  CHECK_THROWS_AS(params_from_modulus(16.0, 0.9), std::domain_error);   // above k_L
  CHECK_THROWS_AS(params_from_modulus(16.0, 5e-4), std::domain_error);  // below floor
}

TEST_CASE("speed limit as k -> 0") {
  // c decreases to L^2 / (L^2 - 16 pi^2) at the small-modulus end.
  const double L = 16.0;
  const double c_floor = L * L / (L * L - 16.0 * kPi * kPi);
  const WaveParams p = params_from_modulus(L, 1e-3);
  CHECK(p.c == doctest::Approx(c_floor).epsilon(1e-6));
  CHECK(p.c > c_floor);
}

TEST_CASE("root-system identities across the family") {
  for (double L : {14.0, 16.0, 20.0, 40.0}) {
    const double kl = max_modulus(L);
    for (double k : {0.1, 0.3, 0.5, 0.8 * kl}) {
      const WaveParams p = params_from_modulus(L, k);
      CAPTURE(L);
      CAPTURE(k);
      const double scale = std::max({std::fabs(p.beta1), p.beta3, 1.0});
      CHECK(std::fabs(p.beta1 + p.beta2 + p.beta3 - 1.25 * (p.c - 1.0)) <= 1e-10 * scale);
      CHECK(std::fabs(p.beta1 * p.beta2 + p.beta1 * p.beta3 + p.beta2 * p.beta3) <=
            1e-10 * scale * scale);
      CHECK(std::fabs(p.A - 0.4 * p.beta1 * p.beta2 * p.beta3) <=
            1e-9 * std::max(1.0, std::fabs(p.A)));
      CHECK(std::fabs(k * k - (p.beta3 - p.beta2) / (p.beta3 - p.beta1)) <= 1e-10);
      CHECK(p.beta1 < 0.0);
      CHECK(p.beta2 > 0.0);
      CHECK(p.beta2 < 5.0 * (p.c - 1.0) / 6.0);
      CHECK(p.beta3 > 5.0 * (p.c - 1.0) / 6.0);
      CHECK(p.beta3 < 1.25 * (p.c - 1.0));
      CHECK(p.c > 1.0);
    }
  }
}

TEST_CASE("roots_from_speed_beta2: quadratic-formula oracle at c=2, beta2=0.4") {
  const auto r = roots_from_speed_beta2(2.0, 0.4);
  CHECK(r.delta == doctest::Approx(2.0825).epsilon(1e-14));
  CHECK(r.beta1 == doctest::Approx(-0.29654348448309060).epsilon(1e-13));
  CHECK(r.beta3 == doctest::Approx(1.1465434844830906).epsilon(1e-13));

  CHECK_THROWS_AS(roots_from_speed_beta2(0.9, 0.1), std::domain_error);
  CHECK_THROWS_AS(roots_from_speed_beta2(2.0, 0.9), std::domain_error);  // >= 5(c-1)/6
  CHECK_THROWS_AS(roots_from_speed_beta2(2.0, -0.1), std::domain_error);
}

TEST_CASE("symmetric-function identities of the resolvent") {
  std::mt19937_64 gen(5);
  for (int t = 0; t < 100; ++t) {
    const double c = 1.1 + 4.0 * (static_cast<double>(gen() >> 11) * 0x1.0p-53);
    const double hi = 5.0 * (c - 1.0) / 6.0;
    const double b2 = hi * (0.05 + 0.9 * (static_cast<double>(gen() >> 11) * 0x1.0p-53));
    const auto r = roots_from_speed_beta2(c, b2);
    CAPTURE(c);
    CAPTURE(b2);
    CHECK(std::fabs(r.beta1 + b2 + r.beta3 - 1.25 * (c - 1.0)) <= 1e-12 * std::max(1.0, c));
    CHECK(std::fabs(r.beta1 * b2 + r.beta1 * r.beta3 + b2 * r.beta3) <=
          1e-12 * std::max(1.0, r.beta3 * r.beta3));
    CHECK(r.beta1 < 0.0);
    CHECK(r.beta3 > b2);
  }
}

TEST_CASE("double root end: beta2 -> 5(c-1)/6 forces k -> 0 and T -> 4 pi sqrt(c/(c-1))") {
  const double c = 2.0;
  const double edge = 5.0 * (c - 1.0) / 6.0;
  const auto pm = period_and_modulus(c, edge * (1.0 - 1e-8));
  CHECK(pm.k < 1e-3);
  CHECK(pm.T == doctest::Approx(4.0 * kPi * std::sqrt(c / (c - 1.0))).epsilon(1e-6));
  // period grows without bound (logarithmically) as beta2 -> 0
  CHECK(period_and_modulus(c, 1e-6).T > 80.0);
  CHECK(period_and_modulus(c, 1e-9).T > period_and_modulus(c, 1e-6).T);
}

TEST_CASE("period_and_modulus: frozen values and round-trip") {
  const auto pm = period_and_modulus(2.0, 0.4);
  CHECK(pm.T == doctest::Approx(19.680294238309955).epsilon(1e-13));
  CHECK(pm.k == doctest::Approx(0.71925237101929732).epsilon(1e-13));

  for (double L : {14.0, 16.0, 20.0, 40.0}) {
    const double kl = max_modulus(L);
    for (double k : {0.1, 0.3, 0.5, 0.8 * kl}) {
      const WaveParams p = params_from_modulus(L, k);
      const auto back = period_and_modulus(p.c, p.beta2);
      CAPTURE(L);
      CAPTURE(k);
      CHECK(std::fabs(back.T - L) <= 1e-10 * L);
      CHECK(std::fabs(back.k - k) <= 1e-10 * k);
    }
  }
}

TEST_CASE("period decreases in beta2") {
  std::mt19937_64 gen(17);
  for (int t = 0; t < 50; ++t) {
    const double c = 1.2 + 3.0 * (static_cast<double>(gen() >> 11) * 0x1.0p-53);
    const double hi = 5.0 * (c - 1.0) / 6.0;
    const double b2 = hi * (0.1 + 0.8 * (static_cast<double>(gen() >> 11) * 0x1.0p-53));
    const double h = 1e-6 * hi;
    const double dT =
        (period_and_modulus(c, b2 + h).T - period_and_modulus(c, b2 - h).T) / (2.0 * h);
    CAPTURE(c);
    CAPTURE(b2);
    CHECK(dT < 0.0);
  }
}

TEST_CASE("profile shape, extrema, periodicity, positivity") {
  const WaveParams p = params_from_modulus(16.0, 0.3);
  CHECK(profile(p, 0.0).phi == doctest::Approx(p.beta3 * p.beta3).epsilon(1e-12));
  CHECK(profile(p, p.L / 2).phi == doctest::Approx(p.beta2 * p.beta2).epsilon(1e-12));
  CHECK(p.a * (p.b + 1.0) == doctest::Approx(p.beta3).epsilon(1e-12));
  CHECK(p.a * p.b == doctest::Approx(p.beta2).epsilon(1e-12));

  std::mt19937_64 gen(3);
  for (int t = 0; t < 100; ++t) {
    const double x = 32.0 * (static_cast<double>(gen() >> 11) * 0x1.0p-53) - 16.0;
    const auto v = profile(p, x);
    CHECK(v.phi > 0.0);
    CHECK(v.phi >= p.beta2 * p.beta2 * (1.0 - 1e-12));
    CHECK(v.phi <= p.beta3 * p.beta3 * (1.0 + 1e-12));
    CHECK(std::fabs(profile(p, x + p.L).phi - v.phi) <= 1e-12 * std::max(1.0, v.phi));
    // even about the crest
    CHECK(std::fabs(profile(p, -x).phi - v.phi) <= 1e-12 * std::max(1.0, v.phi));
  }
}

TEST_CASE("profile derivative matches the spectral derivative") {
  const WaveParams p = params_from_modulus(20.0, 0.5);
  const int n = 256;
  for (int j = 0; j < n; ++j) {
    const double x = p.L * j / n;
    const double h = 1e-6;
    const double fd = (profile(p, x + h).phi - profile(p, x - h).phi) / (2.0 * h);
    CHECK(std::fabs(fd - profile_derivative(p, x)) <= 1e-7);
  }
}

TEST_CASE("ode residuals at the reference resolution") {
  CHECK_THROWS_AS(ode_residual(params_from_modulus(16.0, 0.3), 62), std::invalid_argument);
  CHECK_THROWS_AS(ode_residual(params_from_modulus(16.0, 0.3), 101), std::invalid_argument);
  for (double L : {16.0, 20.0}) {
    for (double k : {0.3, 0.5}) {
      const WaveParams p = params_from_modulus(L, k);
      const auto r = ode_residual(p, 512);
      CAPTURE(L);
      CAPTURE(k);
      CHECK(r.res_el <= 1e-7 * std::max(1.0, std::fabs(p.A)));
      CHECK(r.res_quad <= 1e-7);
      CHECK(r.res_psi <= 1e-8);
    }
  }
}

TEST_CASE("speed and constant derivatives") {
  const double L = 16.0;
  const double kl = max_modulus(L);
  for (int i = 0; i < 50; ++i) {
    const double k = 0.02 + (0.98 * kl - 0.02) * i / 49.0;
    const WaveParams p = params_from_modulus(L, k);
    CHECK(dparams_dk(p).dc_dk > 0.0);
  }
  for (double k : {0.2, 0.3, 0.5, 0.7}) {
    const WaveParams p = params_from_modulus(L, k);
    const auto d = dparams_dk(p);
    const double h = 1e-6;
    const double fdc = (params_from_modulus(L, k + h).c - params_from_modulus(L, k - h).c) / (2.0 * h);
    const double fdA = (params_from_modulus(L, k + h).A - params_from_modulus(L, k - h).A) / (2.0 * h);
    CAPTURE(k);
    CHECK(std::fabs(fdc - d.dc_dk) <= 1e-7 * std::fabs(d.dc_dk));
    CHECK(std::fabs(fdA - d.dA_dk) <= 1e-6 * std::fabs(d.dA_dk));
  }
}
