#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "schamel/fourier.hpp"
#include "schamel/stability.hpp"

using namespace schamel;
using elliptic::Modulus;

namespace {
constexpr double kPi = std::numbers::pi;

std::vector<double> sample_phi(const WaveParams& p, int n) {
  std::vector<double> out(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) out[static_cast<size_t>(j)] = profile(p, p.L * j / n).phi;
  return out;
}
}  // namespace

TEST_CASE("p polynomials: printed anchor values and double entry") {
  const auto p0 = stability::p_polynomials(Modulus(1e-6));
  CHECK(p0[2] == doctest::Approx(-9.0).epsilon(1e-9));  // p3(0) = -9
  CHECK(p0[4] == doctest::Approx(4.0).epsilon(1e-9));   // p5(0) = 2 + 2

  for (int i = 1; i <= 20; ++i) {
    const double k = 0.047 * i;
    const auto a = stability::p_polynomials(Modulus(k));
    const auto b = stability::p_polynomials_alternate(Modulus(k));
    for (int j = 0; j < 11; ++j) {
      CAPTURE(k);
      CAPTURE(j);
      CHECK(std::fabs(a[static_cast<size_t>(j)] - b[static_cast<size_t>(j)]) <=
            1e-12 * std::max(1.0, std::fabs(a[static_cast<size_t>(j)])));
    }
  }
  // explicit spot value: p3(0.5) = -9/16 + 9/4 - 9
  const auto ph = stability::p_polynomials(Modulus(0.5));
  CHECK(ph[2] == doctest::Approx(-9.0 * 0.0625 + 9.0 * 0.25 - 9.0).epsilon(1e-15));
}

TEST_CASE("m functions: composition and signs") {
  const Modulus m(0.3);
  const auto p = stability::p_polynomials(m);
  const auto mf = stability::m_functions(m);
  const double K = elliptic::complete_K(m), E = elliptic::complete_E(m);
  CHECK(mf.m1 == doctest::Approx(p[5] * K * K + p[6] * E * K + p[7] * E * E).epsilon(1e-14));
  CHECK(mf.m2 == doctest::Approx(p[8] * K * K + p[9] * E * K + p[10] * E * E).epsilon(1e-14));

  // m3's first factor tends to 2 + 2 at k -> 0
  const auto tiny = stability::m_functions(Modulus(1e-5));
  const auto ptiny = stability::p_polynomials(Modulus(1e-5));
  const double second = ptiny[0] * kPi * kPi / 4.0 + ptiny[1] * kPi * kPi / 4.0 +
                        ptiny[2] * kPi * kPi / 4.0;
  CHECK(tiny.m3 == doctest::Approx(4.0 * second).epsilon(1e-6));

  for (int i = 1; i < 100; ++i) {
    const double k = i / 100.0;
    CAPTURE(k);
    CHECK(stability::m_functions(Modulus(k)).m1 < 0.0);
  }
}

TEST_CASE("g functions against quadrature of the profile") {
  for (double L : {16.0, 20.0}) {
    for (double k : {0.3, 0.5, 0.75}) {
      const WaveParams p = params_from_modulus(L, k);
      const auto g = stability::g_functions(L, Modulus(k));
      const int n = 4096;
      const auto phi = sample_phi(p, n);
      std::vector<double> phi2(phi);
      for (double& v : phi2) v *= v;
      const auto dphi = fourier::spectral_derivative(phi, L, 1);
      std::vector<double> dphi2(static_cast<size_t>(n));
      for (int j = 0; j < n; ++j) dphi2[static_cast<size_t>(j)] = dphi[static_cast<size_t>(j)] * dphi[static_cast<size_t>(j)];

      const double c2 = p.c * p.c, c4 = c2 * c2;
      CAPTURE(L);
      CAPTURE(k);
      CHECK(fourier::integrate(phi, L) == doctest::Approx(c2 * g.g1).epsilon(1e-8));
      CHECK(fourier::integrate(phi2, L) == doctest::Approx(c4 * g.s1).epsilon(1e-8));
      CHECK(fourier::integrate(dphi2, L) == doctest::Approx(c4 * g.s2).epsilon(1e-8));
      CHECK(p.A == doctest::Approx(p.c * c2 * g.g3).epsilon(1e-8));
      CHECK(2.0 * g.g2 == doctest::Approx(g.s1 + g.s2).epsilon(1e-12));
    }
  }
}

TEST_CASE("frozen stability values at (L, k) = (16, 0.3)") {
  const WaveParams p = params_from_modulus(16.0, 0.3);
  const auto g = stability::g_functions(16.0, Modulus(0.3));
  CHECK(g.g1 == doctest::Approx(4.2524831816459570).epsilon(1e-12));
  CHECK(g.g2 == doctest::Approx(0.57159875659082668).epsilon(1e-12));
  CHECK(g.g3 == doctest::Approx(-0.027098173218676361).epsilon(1e-12));
  const auto f = stability::f_and_r(p);
  CHECK(f.f1 == doctest::Approx(1.5949878711688060).epsilon(1e-11));
  CHECK(f.f2 == doctest::Approx(0.16277410381632980).epsilon(1e-10));
  CHECK(f.f3 == doctest::Approx(0.00032599492185605382).epsilon(1e-10));
  CHECK(stability::phi_analytic(p) == doctest::Approx(-3.7301845080197016).epsilon(1e-10));
  CHECK(stability::M_functional(p) == doctest::Approx(3.1672993341709219).epsilon(1e-10));
  const auto d = dparams_dk(p);
  CHECK(d.dc_dk == doctest::Approx(0.24734961626549201).epsilon(1e-11));
  CHECK(d.dA_dk == doctest::Approx(-0.12166097327363350).epsilon(1e-10));
}

TEST_CASE("closed-form derivatives match central differences") {
  const double L = 16.0, h = 1e-6;
  for (double k : {0.05, 0.1, 0.3, 0.5, 0.7, 0.85, 0.9}) {
    const auto d = stability::g_derivatives(L, Modulus(k));
    const auto hi = stability::g_functions(L, Modulus(k + h));
    const auto lo = stability::g_functions(L, Modulus(k - h));
    CAPTURE(k);
    CHECK(std::fabs((hi.g1 - lo.g1) / (2 * h) - d.dg1) <= 1e-6 * std::max(1e-12, std::fabs(d.dg1)));
    CHECK(std::fabs((hi.g3 - lo.g3) / (2 * h) - d.dg3) <= 1e-6 * std::max(1e-12, std::fabs(d.dg3)));
    CHECK(std::fabs((hi.s1 - lo.s1) / (2 * h) - d.ds1) <= 1e-6 * std::max(1e-12, std::fabs(d.ds1)));
    CHECK(std::fabs((hi.s2 - lo.s2) / (2 * h) - d.ds2) <= 1e-6 * std::max(1e-12, std::fabs(d.ds2)));
  }
  CHECK_THROWS_AS(stability::g_derivatives(L, Modulus(0.005)), std::domain_error);
  CHECK_THROWS_AS(stability::g_derivatives(L, Modulus(0.995)), std::domain_error);
}

TEST_CASE("f signs, the reduction, and r across the band") {
  for (double L : {14.0, 16.0, 20.0, 40.0}) {
    const double kl = max_modulus(L);
    for (int i = 0; i < 25; ++i) {
      const double k = 0.05 + (0.9 * kl - 0.05) * i / 24.0;
      const WaveParams p = params_from_modulus(L, k);
      const auto f = stability::f_and_r(p);
      CAPTURE(L);
      CAPTURE(k);
      CHECK(f.f1 > 0.0);
      CHECK(f.f2 > 0.0);
      CHECK(f.f3 > 0.0);
      CHECK(f.r < 0.0);
      // the reduction witnesses f2 > 0 at this period
      CHECK(stability::f2_sign_witness(L, Modulus(k)) < 0.0);
    }
  }
  // sign of f3 equals the sign of dg1 * dg3 by definition
  const auto d = stability::g_derivatives(16.0, Modulus(0.4));
  const auto f = stability::f_and_r(params_from_modulus(16.0, 0.4));
  CHECK(f.f3 == doctest::Approx(d.dg1 * d.dg3).epsilon(1e-14));
}

TEST_CASE("r is period-free and both cross-term groupings stay negative") {
  for (double k : {0.1, 0.4, 0.8}) {
    const auto fa = stability::f_and_r(params_from_modulus(16.0, k));
    const auto fb = stability::f_and_r(params_from_modulus(40.0, k));
    CHECK(fa.r == fb.r);  // bit-identical: no period enters
  }
  for (int i = 1; i < 99; ++i) {
    const double k = i / 100.0 + 0.005;
    const Modulus m(k);
    const auto mf = stability::m_functions(m);
    const double K2 = std::pow(elliptic::complete_K(m), 2);
    const double base = 16.0 * kPi * kPi * mf.m1 / 9.0;
    const double corrected = base - 32.0 * mf.m2 * K2 / 7.0 - 160.0 * mf.m3 * K2 / 9.0 +
                             640.0 * mf.m4 * K2 / 9.0;
    const double flipped = base + 32.0 * mf.m2 * K2 / 7.0 + 160.0 * mf.m3 * K2 / 9.0 +
                           640.0 * mf.m4 * K2 / 9.0;
    CAPTURE(k);
    CHECK(corrected < 0.0);
    CHECK(flipped < 0.0);
  }
}

TEST_CASE("r leading behavior at small modulus") {
  // r(k)/k^4 approaches -80 pi^4
  const WaveParams p = params_from_modulus(16.0, 0.05);
  const auto f = stability::f_and_r(p);
  const double ratio = f.r / std::pow(0.05, 4);
  CHECK(std::fabs(ratio - (-80.0 * std::pow(kPi, 4))) <= 0.05 * 80.0 * std::pow(kPi, 4));
  CHECK(f.r == doctest::Approx(-0.048522552085671465).epsilon(1e-10));
}

TEST_CASE("Phi: all four routes agree and the sign is negative") {
  for (const auto& [L, k] : {std::pair{16.0, 0.3}, std::pair{20.0, 0.5}}) {
    const WaveParams p = params_from_modulus(L, k);
    const double an = stability::phi_analytic(p);
    CAPTURE(L);
    CAPTURE(k);
    CHECK(an < 0.0);
    const double nu = stability::phi_numeric(p, 512);
    const double gr = stability::phi_gradient_route(p, 512);
    const double cr = stability::phi_conserved_route(p, 512);
    CHECK(std::fabs(nu - an) <= 1e-3 * std::fabs(an));
    CHECK(std::fabs(gr - an) <= 1e-4 * std::fabs(an));
    CHECK(std::fabs(cr - an) <= 1e-4 * std::fabs(an));
    // halving the k-step moves the pairing value by less than 1e-5 relative
    const double nu2 = stability::phi_numeric(p, 512, 5e-6);
    CHECK(std::fabs(nu2 - nu) <= 1e-5 * std::fabs(nu));
  }
}

TEST_CASE("Phi stays negative across the sampled family") {
  for (double L : {14.0, 16.0, 20.0, 40.0}) {
    const double kl = max_modulus(L);
    for (int i = 0; i < 50; ++i) {
      const double k = 0.05 + (0.9 * kl - 0.05) * i / 49.0;
      CAPTURE(L);
      CAPTURE(k);
      CHECK(stability::phi_analytic(params_from_modulus(L, k)) < 0.0);
    }
  }
}

TEST_CASE("cn power integrals: closed forms, recursion, quadrature") {
  const WaveParams p = params_from_modulus(16.0, 0.3);
  const auto C = stability::cn_power_integrals(p, 5);
  const double K = elliptic::complete_K(Modulus(0.3));
  // frozen quarter-period values scaled by L/K
  const double lk = p.L / K;
  CHECK(C[0] == doctest::Approx(lk * 0.79454689762758214).epsilon(1e-13));
  CHECK(C[1] == doctest::Approx(lk * 0.59358271121308126).epsilon(1e-13));
  CHECK(C[2] == doctest::Approx(lk * 0.49369275054309487).epsilon(1e-13));
  CHECK(C[3] == doctest::Approx(lk * 0.43148095769443335).epsilon(1e-13));
  CHECK(C[4] == doctest::Approx(lk * 0.38803424504201424).epsilon(1e-13));

  // quadrature oracle at 8192 points
  const int n = 8192;
  for (int pw = 1; pw <= 5; ++pw) {
    std::vector<double> f(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
      const double cn = elliptic::jacobi(p.L * j / n / p.eta, Modulus(p.k)).cn;
      f[static_cast<size_t>(j)] = std::pow(cn * cn, pw);
    }
    CAPTURE(pw);
    CHECK(std::fabs(fourier::integrate(f, p.L) - C[static_cast<size_t>(pw - 1)]) <= 1e-10);
  }
  CHECK_THROWS_AS(stability::cn_power_integrals(p, 6), std::invalid_argument);
}

TEST_CASE("conserved-quantity representations match quadrature") {
  for (const auto& [L, k] : {std::pair{16.0, 0.3}, std::pair{20.0, 0.5}}) {
    const WaveParams p = params_from_modulus(L, k);
    const auto rep = stability::conserved_representations(p);
    const int n = 4096;
    const auto phi = sample_phi(p, n);
    std::vector<double> phi2(phi);
    for (double& v : phi2) v *= v;
    const auto dphi = fourier::spectral_derivative(phi, L, 1);
    std::vector<double> dphi2(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) dphi2[static_cast<size_t>(j)] = dphi[static_cast<size_t>(j)] * dphi[static_cast<size_t>(j)];
    CAPTURE(L);
    CAPTURE(k);
    CHECK(rep.v_int == doctest::Approx(fourier::integrate(phi, L)).epsilon(1e-9));
    CHECK(rep.phi2_int == doctest::Approx(fourier::integrate(phi2, L)).epsilon(1e-9));
    CHECK(rep.dphi_int == doctest::Approx(fourier::integrate(dphi2, L)).epsilon(1e-9));
  }
}

TEST_CASE("M functional: positivity, zero, homogeneity") {
  const WaveParams p = params_from_modulus(16.0, 0.3);
  CHECK(stability::M_functional(p) > 0.0);

  const int n = 512;
  std::vector<double> zero(static_cast<size_t>(n), 0.0);
  CHECK(stability::M_functional(p, zero) == doctest::Approx(0.0).epsilon(1e-15));

  const auto phi = sample_phi(p, n);
  CHECK(stability::M_functional(p, phi) ==
        doctest::Approx(stability::M_functional(p)).epsilon(1e-8));

  std::vector<double> twophi(phi);
  for (double& v : twophi) v *= 2.0;
  const auto d = dparams_dk(p);
  const auto cons = stability::conserved_at(phi, p.L);
  CHECK(stability::M_functional(p, twophi) ==
        doctest::Approx(4.0 * d.dc_dk * cons.Q + 2.0 * d.dA_dk * cons.V).epsilon(1e-10));

  for (double L : {16.0, 20.0}) {
    const double kl = max_modulus(L);
    for (int i = 0; i < 20; ++i) {
      const double k = 0.05 + (0.9 * kl - 0.05) * i / 19.0;
      CAPTURE(L);
      CAPTURE(k);
      CHECK(stability::M_functional(params_from_modulus(L, k)) > 0.0);
    }
  }
}

TEST_CASE("full report verdicts") {
  const auto rep = stability::report(params_from_modulus(16.0, 0.3));
  CHECK(rep.all_ok());
  CHECK(rep.phi_analytic < 0.0);
  CHECK(rep.Q_val == doctest::Approx(27.245529526704106).epsilon(1e-10));
  CHECK(rep.V_val == doctest::Approx(29.359225420429632).epsilon(1e-10));
  CHECK(std::fabs(rep.phi_numeric - rep.phi_analytic) <= 1e-3 * std::fabs(rep.phi_analytic));
}
