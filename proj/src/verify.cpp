#include "schamel/verify.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "schamel/collocation.hpp"
#include "schamel/elliptic.hpp"
#include "schamel/evolution.hpp"
#include "schamel/fourier.hpp"
#include "schamel/lame.hpp"
#include "schamel/stability.hpp"
#include "schamel/wave.hpp"

namespace schamel::verify {

namespace {

constexpr double kPi = std::numbers::pi;

using elliptic::Modulus;

struct Runner {
  std::vector<CheckResult>& out;

  void add(const std::string& name, const std::function<std::string()>& body) {
    try {
      std::string detail = body();
      out.push_back({name, detail.empty(), detail});
    } catch (const std::exception& e) {
      out.push_back({name, false, std::string("exception: ") + e.what()});
    }
  }
};

std::string fail_if(bool bad, const std::string& msg) { return bad ? msg : std::string(); }

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

double rand_unit(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

std::vector<std::pair<double, double>> standard_cases() {
  std::vector<std::pair<double, double>> cases;
  for (double L : {14.0, 16.0, 20.0, 40.0}) {
    const double kl = max_modulus(L);
    for (double k : {0.1, 0.3, 0.5, 0.8 * kl}) cases.emplace_back(L, k);
  }
  return cases;
}

}  // namespace

std::vector<CheckResult> run_all(bool quick) {
  std::vector<CheckResult> results;
  Runner r{results};
  std::mt19937_64 gen(0x715CA1Eu);

  // ---- special functions -------------------------------------------------
  r.add("elliptic.legendre_consistency", [&] {
    for (int i = 1; i < 100; ++i) {
      const double k = i / 100.0;
      const Modulus m(k);
      const double K = elliptic::complete_K(m), E = elliptic::complete_E(m);
      if (!(E < K)) return "E >= K at k=" + fmt(k);
      if (!((1.0 - k * k) * K < E)) return "(1-k^2)K >= E at k=" + fmt(k);
    }
    return std::string();
  });

  r.add("elliptic.pythagorean_identities", [&] {
    const int nu = quick ? 40 : 100, nk = quick ? 40 : 100;
    double worst = 0.0;
    for (int i = 0; i < nu; ++i) {
      const double u = -20.0 + 40.0 * i / (nu - 1);
      for (int j = 1; j <= nk; ++j) {
        const double k = 0.0049 + 0.985 * j / nk;
        const auto jac = elliptic::jacobi(u, Modulus(k));
        worst = std::max(worst, std::fabs(jac.sn * jac.sn + jac.cn * jac.cn - 1.0));
        worst = std::max(worst,
                         std::fabs(jac.dn * jac.dn + k * k * jac.sn * jac.sn - 1.0));
      }
    }
    return fail_if(worst > 1e-13, "identity residual " + fmt(worst));
  });

  r.add("elliptic.cn_half_period", [&] {
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
      const double k = 0.01 + 0.97 * rand_unit(gen);
      const Modulus m(k);
      const double K = elliptic::complete_K(m);
      const double u = 4.0 * K * (rand_unit(gen) - 0.5);
      worst = std::max(worst, std::fabs(elliptic::jacobi(u + 2.0 * K, m).cn +
                                        elliptic::jacobi(u, m).cn));
    }
    return fail_if(worst > 1e-12, "antisymmetry residual " + fmt(worst));
  });

  r.add("elliptic.derivative_fd", [&] {
    for (int t = 0; t < 50; ++t) {
      const double k = 0.02 + 0.96 * rand_unit(gen);
      const double h = 1e-5 * (1.0 - k);  // keeps the K''' truncation term flat in k
      const auto d = elliptic::derivatives(Modulus(k));
      const double fdK = (elliptic::complete_K(Modulus(k + h)) -
                          elliptic::complete_K(Modulus(k - h))) / (2.0 * h);
      const double fdE = (elliptic::complete_E(Modulus(k + h)) -
                          elliptic::complete_E(Modulus(k - h))) / (2.0 * h);
      if (std::fabs(fdK - d.dK_dk) > 1e-8 * std::max(1.0, std::fabs(d.dK_dk)) ||
          std::fabs(fdE - d.dE_dk) > 1e-8 * std::max(1.0, std::fabs(d.dE_dk))) {
        return "derivative mismatch at k=" + fmt(k);
      }
      if (!(d.dK_dk > 0.0) || !(d.dE_dk < 0.0)) return "derivative sign at k=" + fmt(k);
    }
    return std::string();
  });

  // ---- wave family --------------------------------------------------------
  r.add("wave.vieta_and_identities", [&] {
    for (const auto& [L, k] : standard_cases()) {
      const WaveParams p = params_from_modulus(L, k);
      const double scale = std::max({std::fabs(p.beta1), p.beta3, 1.0});
      if (std::fabs(p.beta1 + p.beta2 + p.beta3 - 1.25 * (p.c - 1.0)) > 1e-10 * scale)
        return "vieta sum at L=" + fmt(L) + " k=" + fmt(k);
      if (std::fabs(p.beta1 * p.beta2 + p.beta1 * p.beta3 + p.beta2 * p.beta3) >
          1e-10 * scale * scale)
        return "vieta cross at L=" + fmt(L) + " k=" + fmt(k);
      if (std::fabs(p.A - 0.4 * p.beta1 * p.beta2 * p.beta3) >
          1e-10 * std::max(1.0, std::fabs(p.A)))
        return "A identity at L=" + fmt(L) + " k=" + fmt(k);
      if (std::fabs(k * k - (p.beta3 - p.beta2) / (p.beta3 - p.beta1)) > 1e-10)
        return "modulus identity at L=" + fmt(L) + " k=" + fmt(k);
      if (!(p.beta1 < 0.0 && 0.0 < p.beta2 && p.beta2 < 5.0 * (p.c - 1.0) / 6.0 &&
            5.0 * (p.c - 1.0) / 6.0 < p.beta3 && p.beta3 < 1.25 * (p.c - 1.0)))
        return "root ordering at L=" + fmt(L) + " k=" + fmt(k);
    }
    return std::string();
  });

  r.add("wave.resolvent_auxiliary", [&] {
    for (const auto& [L, k] : standard_cases()) {
      const WaveParams p = params_from_modulus(L, k);
      const auto rp = roots_from_speed_beta2(p.c, p.beta2);
      const double lhs = 2.0 * std::sqrt(rp.delta) * (2.0 * k * k - 1.0);
      const double rhs = 2.5 * (p.c - 1.0) - 6.0 * p.beta2;
      if (std::fabs(lhs - rhs) > 1e-10 * std::max(1.0, std::fabs(rhs)))
        return "auxiliary identity at L=" + fmt(L) + " k=" + fmt(k);
    }
    return std::string();
  });

  r.add("wave.roundtrip", [&] {
    for (const auto& [L, k] : standard_cases()) {
      const WaveParams p = params_from_modulus(L, k);
      const auto pm = period_and_modulus(p.c, p.beta2);
      if (std::fabs(pm.T - L) > 1e-10 * L || std::fabs(pm.k - k) > 1e-10 * k)
        return "roundtrip at L=" + fmt(L) + " k=" + fmt(k);
    }
    return std::string();
  });

  r.add("wave.profile_shape", [&] {
    const WaveParams p = params_from_modulus(16.0, 0.3);
    if (std::fabs(p.a * (p.b + 1.0) - p.beta3) > 1e-10 * p.beta3 ||
        std::fabs(p.a * p.b - p.beta2) > 1e-10 * p.beta2)
      return std::string("profile coefficients vs roots");
    const double top = profile(p, 0.0).phi, bottom = profile(p, p.L / 2.0).phi;
    if (std::fabs(top - p.beta3 * p.beta3) > 1e-10 * top ||
        std::fabs(bottom - p.beta2 * p.beta2) > 1e-10 * bottom)
      return std::string("extrema of the profile");
    for (int t = 0; t < 100; ++t) {
      const double x = 3.0 * p.L * (rand_unit(gen) - 0.5);
      const double v0 = profile(p, x).phi, v1 = profile(p, x + p.L).phi;
      if (!(v0 > 0.0)) return std::string("positivity");
      if (std::fabs(v1 - v0) > 1e-12 * std::max(1.0, v0)) return std::string("periodicity");
    }
    return std::string();
  });

  r.add("wave.speed_monotone", [&] {
    const double L = 16.0, kl = max_modulus(L);
    for (int i = 0; i < 50; ++i) {
      const double k = 0.02 + (0.98 * kl - 0.02) * i / 49.0;
      const WaveParams p = params_from_modulus(L, k);
      const auto d = dparams_dk(p);
      if (!(d.dc_dk > 0.0)) return "dc/dk <= 0 at k=" + fmt(k);
      // c'(k) ~ k^3 near the origin, so the relative finite-difference
      // comparison is meaningful only where c' is O(1).
      if (k > 0.15 && k < 0.95) {
        const double h = 1e-6;
        const double fd = (params_from_modulus(L, k + h).c - params_from_modulus(L, k - h).c) / (2.0 * h);
        if (std::fabs(fd - d.dc_dk) > 1e-7 * std::fabs(d.dc_dk))
          return "dc/dk finite-difference mismatch at k=" + fmt(k);
      }
    }
    return std::string();
  });

  r.add("wave.period_decreasing_in_beta2", [&] {
    for (int t = 0; t < 50; ++t) {
      const double c = 1.2 + 3.0 * rand_unit(gen);
      const double hi = 5.0 * (c - 1.0) / 6.0;
      const double b2 = hi * (0.1 + 0.8 * rand_unit(gen));
      const double h = 1e-6 * hi;
      const double fd =
          (period_and_modulus(c, b2 + h).T - period_and_modulus(c, b2 - h).T) / (2.0 * h);
      if (!(fd < 0.0)) return "dT/dbeta2 >= 0 at c=" + fmt(c) + " beta2=" + fmt(b2);
    }
    return std::string();
  });

  r.add("wave.ode_residual", [&] {
    for (const auto& [L, k] : {std::pair{16.0, 0.3}, std::pair{20.0, 0.5}}) {
      const WaveParams p = params_from_modulus(L, k);
      const auto res = ode_residual(p, 512);
      if (res.res_el > 1e-7 * std::max(1.0, std::fabs(p.A)))
        return "profile equation residual " + fmt(res.res_el);
      if (res.res_quad > 1e-7) return "first-integral residual " + fmt(res.res_quad);
      if (res.res_psi > 1e-8) return "psi quadrature residual " + fmt(res.res_psi);
    }
    return std::string();
  });

  // ---- analytic spectrum --------------------------------------------------
  r.add("lame.characteristic_residuals", [&] {
    for (int i = 1; i <= 100; ++i) {
      const double k = 0.0098 * i;
      const Modulus m(k);
      const auto q = lame::quadratic_roots(m);
      const auto z = lame::cubic_coefficients(m);
      for (double h : {q.h1, q.h2}) {
        const double res = h * h - 20.0 * (1.0 + k * k) * h +
                           64.0 * std::pow(1.0 + k * k, 2) + 108.0 * k * k;
        if (std::fabs(res) > 1e-10 * h * h) return "quadratic residual at k=" + fmt(k);
      }
      const auto c = lame::cubic_roots(m);
      for (double h : {c.h3, c.h4, c.h5}) {
        const double res = h * h * h + z.z1 * h * h + z.z2 * h + z.z3;
        if (std::fabs(res) > 1e-8 * std::max(1.0, std::fabs(h * h * h)))
          return "cubic residual at k=" + fmt(k);
      }
    }
    return std::string();
  });

  r.add("lame.ordering", [&] {
    // h1 and h5 agree through order k^4 and separate only at k^6, so the
    // strict comparison needs k above the double-precision resolution floor.
    for (int i = 0; i < 100; ++i) {
      const double k = 0.03 + 0.0096 * i;
      const Modulus m(k);
      const auto q = lame::quadratic_roots(m);
      const auto c = lame::cubic_roots(m);
      if (!(c.h3 < q.h2 && q.h2 < c.h4 && c.h4 < q.h1 && q.h1 < c.h5))
        return "interleaving fails at k=" + fmt(k);
    }
    return std::string();
  });

  r.add("lame.lambda_pattern", [&] {
    for (const auto& [L, k] : standard_cases()) {
      const WaveParams p = params_from_modulus(L, k);
      const auto s = lame::operator_eigenvalues(p);
      if (std::fabs(s.lambda[1]) > 1e-12) return "zero mode off by " + fmt(s.lambda[1]);
      if (!(s.lambda[0] < 0.0 && s.lambda[2] > 0.0 && s.lambda[3] > 0.0 && s.lambda[4] > 0.0))
        return "sign pattern at L=" + fmt(L) + " k=" + fmt(k);
    }
    return std::string();
  });

  r.add("lame.change_of_variables", [&] {
    for (const auto& [L, k] : standard_cases()) {
      const WaveParams p = params_from_modulus(L, k);
      const double s = std::sqrt(k * k * k * k - k * k + 1.0);
      const double e2 = p.eta * p.eta;
      const double t1 = 1.5 * p.a * e2 / p.c - 30.0 * k * k;
      const double t2 = e2 * (p.c - 1.0) / p.c - 16.0 * s;
      const double t3 = 1.5 * p.a * p.b * e2 / p.c - 10.0 * (s - 2.0 * k * k + 1.0);
      if (std::fabs(t1) > 1e-10 * 30.0 * k * k || std::fabs(t2) > 1e-10 * 16.0 * s ||
          std::fabs(t3) > 1e-9 * std::max(1.0, 10.0 * (s - 2.0 * k * k + 1.0)))
        return "bookkeeping at L=" + fmt(L) + " k=" + fmt(k);
    }
    return std::string();
  });

  r.add("lame.zero_counts", [&] {
    for (double k : {0.3, 0.8 * max_modulus(16.0)}) {
      const WaveParams p = params_from_modulus(16.0, k);
      const int expected[5] = {0, 2, 2, 4, 4};
      for (int i = 0; i < 5; ++i) {
        const auto e = lame::eigenpair(i, p);
        if (e.zero_count != expected[i])
          return "zero count of mode " + std::to_string(i) + " is " +
                 std::to_string(e.zero_count) + " at k=" + fmt(k);
      }
    }
    return std::string();
  });

  r.add("lame.phi_prime_mode", [&] {
    const WaveParams p = params_from_modulus(16.0, 0.3);
    const double c0 = lame::phi_prime_constant(p);
    double worst = 0.0;
    for (int j = 0; j < 200; ++j) {
      const double x = p.L * j / 200.0;
      worst = std::max(worst, std::fabs(lame::eigenfunction(1, p, x) -
                                        c0 * profile_derivative(p, x)));
    }
    return fail_if(worst > 1e-9, "chi1 vs C0 phi' residual " + fmt(worst));
  });

  // ---- collocation --------------------------------------------------------
  r.add("colloc.d2_action", [&] {
    const Grid g = Grid::uniform(128, 16.0);
    const auto d2 = second_derivative_matrix(g);
    long double worst_row = 0.0L;
    for (int i = 0; i < g.n; ++i) {
      long double acc = 0.0L;
      for (int j = 0; j < g.n; ++j) acc += d2(i, j);
      worst_row = std::max(worst_row, std::fabs(static_cast<double>(acc)) + 0.0L);
    }
    if (static_cast<double>(worst_row) > 1e-12) {
      return "row sums " + fmt(static_cast<double>(worst_row));
    }
    const double xi = 2.0 * kPi / g.L;
    std::vector<double> mode(static_cast<size_t>(g.n));
    for (int j = 0; j < g.n; ++j) mode[static_cast<size_t>(j)] = std::cos(xi * g.nodes[static_cast<size_t>(j)]);
    const auto out = d2.multiply(mode);
    for (int j = 0; j < g.n; ++j) {
      if (std::fabs(out[static_cast<size_t>(j)] + xi * xi * mode[static_cast<size_t>(j)]) > 1e-12)
        return std::string("cos mode action");
    }
    return std::string();
  });

  r.add("colloc.symmetry", [&] {
    const Grid g = Grid::uniform(128, 16.0);
    const WaveParams p = params_from_modulus(16.0, 0.3);
    const auto d2 = second_derivative_matrix(g);
    const auto m = linearized_operator(p, g);
    if (d2.symmetry_error() > 1e-12 * d2.max_abs()) return std::string("derivative matrix");
    if (m.symmetry_error() > 1e-12 * m.max_abs()) return std::string("operator matrix");
    return std::string();
  });

  r.add("colloc.phi_prime_nullvector", [&] {
    const int n = quick ? 256 : 512;
    const WaveParams p = params_from_modulus(16.0, 0.3);
    const Grid g = Grid::uniform(n, p.L);
    const auto m = linearized_operator(p, g);
    std::vector<double> dphi(static_cast<size_t>(n));
    double norm = 0.0;
    for (int j = 0; j < n; ++j) {
      dphi[static_cast<size_t>(j)] = profile_derivative(p, g.nodes[static_cast<size_t>(j)]);
      norm += dphi[static_cast<size_t>(j)] * dphi[static_cast<size_t>(j)];
    }
    norm = std::sqrt(norm);
    const auto mv = m.multiply(dphi);
    double res = 0.0;
    for (double v : mv) res += v * v;
    res = std::sqrt(res);
    return fail_if(res > 1e-7 * norm, "residual " + fmt(res / norm));
  });

  r.add("colloc.jacobi_eigensolver", [&] {
    SymmetricMatrix d(3);
    d(0, 0) = 1.0; d(1, 1) = 2.0; d(2, 2) = 3.0;
    auto e = symmetric_eigen(d);
    if (std::fabs(e.values[0] - 1.0) + std::fabs(e.values[1] - 2.0) +
            std::fabs(e.values[2] - 3.0) > 1e-14)
      return std::string("diagonal case");
    SymmetricMatrix f(2);
    f(0, 1) = f(1, 0) = 1.0;
    e = symmetric_eigen(f);
    if (std::fabs(e.values[0] + 1.0) > 1e-14 || std::fabs(e.values[1] - 1.0) > 1e-14)
      return std::string("swap case");
    const int n = 50;
    SymmetricMatrix m(n);
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) m(i, j) = m(j, i) = 2.0 * rand_unit(gen) - 1.0;
    }
    e = symmetric_eigen(m);
    double worst = 0.0, ortho = 0.0;
    for (int col = 0; col < n; ++col) {
      for (int rr = 0; rr < n; ++rr) {
        double rec = 0.0;
        for (int q = 0; q < n; ++q) {
          rec += e.vectors[static_cast<size_t>(q) * n + rr] * e.values[static_cast<size_t>(q)] *
                 e.vectors[static_cast<size_t>(q) * n + col];
        }
        worst = std::max(worst, std::fabs(rec - m(rr, col)));
      }
      for (int col2 = col; col2 < n; ++col2) {
        double dot = 0.0;
        for (int rr = 0; rr < n; ++rr) {
          dot += e.vectors[static_cast<size_t>(col) * n + rr] *
                 e.vectors[static_cast<size_t>(col2) * n + rr];
        }
        ortho = std::max(ortho, std::fabs(dot - (col == col2 ? 1.0 : 0.0)));
      }
    }
    if (worst > 1e-9) return "reconstruction error " + fmt(worst);
    if (ortho > 1e-10) return "orthonormality error " + fmt(ortho);
    return std::string();
  });

  r.add("colloc.spectrum_match", [&] {
    const int n = quick ? 256 : 512;
    const WaveParams p = params_from_modulus(16.0, 0.3);
    const auto rep = spectrum_report(p, Grid::uniform(n, p.L));
    if (!rep.pattern_ok) return std::string("eigenvalue pattern");
    if (!(rep.sixth_numeric > rep.rows[4].analytic)) return std::string("sixth eigenvalue");
    return std::string();
  });

  r.add("colloc.convergence_floor", [&] {
    const WaveParams p = params_from_modulus(16.0, 0.8 * max_modulus(16.0));
    const auto r128 = spectrum_report(p, Grid::uniform(128, p.L));
    const auto r256 = spectrum_report(p, Grid::uniform(256, p.L));
    for (int i = 0; i < 5; ++i) {
      const double g1 = r128.rows[static_cast<size_t>(i)].abs_gap;
      const double g2 = r256.rows[static_cast<size_t>(i)].abs_gap;
      if (!(g2 <= g1 / 10.0 || g2 <= 1e-8))
        return "mode " + std::to_string(i) + " gaps " + fmt(g1) + " -> " + fmt(g2);
    }
    return std::string();
  });

  r.add("colloc.eigenvector_oscillation", [&] {
    const WaveParams p = params_from_modulus(16.0, 0.3);
    const int n = 128;
    const auto eig = symmetric_eigen(linearized_operator(p, Grid::uniform(n, p.L)));
    auto zeros = [&](int col) {
      int count = 0;
      for (int j = 0; j < n; ++j) {
        const double v0 = eig.vectors[static_cast<size_t>(col) * n + j];
        const double v1 = eig.vectors[static_cast<size_t>(col) * n + (j + 1) % n];
        if (v0 * v1 < 0.0) ++count;
      }
      return count;
    };
    if (zeros(0) != 0) return std::string("ground state oscillation");
    if (zeros(1) != 2) return std::string("second mode oscillation");
    return std::string();
  });

  // ---- stability ----------------------------------------------------------
  r.add("stab.p_double_entry", [&] {
    for (int i = 1; i <= 20; ++i) {
      const double k = 0.047 * i;
      const auto a = stability::p_polynomials(Modulus(k));
      const auto b = stability::p_polynomials_alternate(Modulus(k));
      for (int j = 0; j < 11; ++j) {
        if (std::fabs(a[static_cast<size_t>(j)] - b[static_cast<size_t>(j)]) >
            1e-12 * std::max(1.0, std::fabs(a[static_cast<size_t>(j)])))
          return "transcriptions differ for p" + std::to_string(j + 1) + " at k=" + fmt(k);
      }
    }
    return std::string();
  });

  r.add("stab.quadrature_match", [&] {
    for (const auto& [L, k] : {std::pair{16.0, 0.3}, std::pair{20.0, 0.5}}) {
      const WaveParams p = params_from_modulus(L, k);
      const auto g = stability::g_functions(L, Modulus(k));
      const int n = 4096;
      std::vector<double> phi(static_cast<size_t>(n));
      for (int j = 0; j < n; ++j) phi[static_cast<size_t>(j)] = profile(p, L * j / n).phi;
      std::vector<double> phi2(phi);
      for (double& v : phi2) v *= v;
      const auto dphi = fourier::spectral_derivative(phi, L, 1);
      std::vector<double> dphi2(static_cast<size_t>(n));
      for (int j = 0; j < n; ++j) dphi2[static_cast<size_t>(j)] = dphi[static_cast<size_t>(j)] * dphi[static_cast<size_t>(j)];
      const double c = p.c, c2 = c * c, c4 = c2 * c2;
      const double V = fourier::integrate(phi, L);
      const double I2 = fourier::integrate(phi2, L);
      const double I3 = fourier::integrate(dphi2, L);
      if (std::fabs(V - c2 * g.g1) > 1e-8 * std::fabs(V)) return std::string("V vs c^2 g1");
      if (std::fabs(I2 - c4 * g.s1) > 1e-8 * std::fabs(I2)) return std::string("phi^2 vs c^4 s1");
      if (std::fabs(I3 - c4 * g.s2) > 1e-8 * std::max(1.0, std::fabs(I3))) return std::string("phi'^2 vs c^4 s2");
      if (std::fabs(0.5 * (I2 + I3) - c4 * g.g2) > 1e-8 * std::fabs(c4 * g.g2)) return std::string("Q vs c^4 g2");
      if (std::fabs(p.A - c * c2 * g.g3) > 1e-8 * std::fabs(p.A)) return std::string("A vs c^3 g3");
      if (std::fabs(2.0 * g.g2 - (g.s1 + g.s2)) > 1e-10 * std::fabs(g.g2)) return std::string("g2 split");
    }
    return std::string();
  });

  r.add("stab.derivative_fd", [&] {
    const double L = 16.0, h = 1e-6;
    for (double k : {0.1, 0.3, 0.5, 0.7, 0.85}) {
      const auto d = stability::g_derivatives(L, Modulus(k));
      const auto hi = stability::g_functions(L, Modulus(k + h));
      const auto lo = stability::g_functions(L, Modulus(k - h));
      auto close = [&](double an, double va, double vb) {
        const double fd = (va - vb) / (2.0 * h);
        return std::fabs(fd - an) <= 1e-6 * std::max(1e-12, std::fabs(an));
      };
      if (!close(d.dg1, hi.g1, lo.g1)) return "dg1 at k=" + fmt(k);
      if (!close(d.dg3, hi.g3, lo.g3)) return "dg3 at k=" + fmt(k);
      if (!close(d.ds1, hi.s1, lo.s1)) return "ds1 at k=" + fmt(k);
      if (!close(d.ds2, hi.s2, lo.s2)) return "ds2 at k=" + fmt(k);
    }
    return std::string();
  });

  r.add("stab.sign_scan", [&] {
    for (int i = 2; i <= 98; ++i) {
      const double k = i / 100.0;
      const auto m = stability::m_functions(Modulus(k));
      if (!(m.m1 < 0.0)) return "m1 >= 0 at k=" + fmt(k);
      if (!(stability::f2_sign_witness(4.0 * kPi, Modulus(k)) < 0.0))
        return "r >= 0 at k=" + fmt(k);
    }
    const auto Ls = quick ? std::vector<double>{16.0} : std::vector<double>{14.0, 16.0, 20.0, 40.0};
    for (double L : Ls) {
      const double kl = max_modulus(L);
      const int npts = quick ? 15 : 50;
      for (int i = 0; i < npts; ++i) {
        const double k = 0.05 + (0.9 * kl - 0.05) * i / (npts - 1.0);
        const WaveParams p = params_from_modulus(L, k);
        const auto f = stability::f_and_r(p);
        if (!(f.f1 > 0.0 && f.f2 > 0.0 && f.f3 > 0.0))
          return "f signs at L=" + fmt(L) + " k=" + fmt(k);
        if (!(stability::f2_sign_witness(L, Modulus(k)) < 0.0))
          return "reduction sign at L=" + fmt(L) + " k=" + fmt(k);
        if (!(stability::phi_analytic(p) < 0.0))
          return "Phi >= 0 at L=" + fmt(L) + " k=" + fmt(k);
        if (!(stability::M_functional(p) > 0.0))
          return "M <= 0 at L=" + fmt(L) + " k=" + fmt(k);
      }
    }
    return std::string();
  });

  r.add("stab.r_period_free", [&] {
    for (double k : {0.2, 0.5, 0.8}) {
      const auto fa = stability::f_and_r(params_from_modulus(16.0, k));
      const auto fb = stability::f_and_r(params_from_modulus(40.0, k));
      if (fa.r != fb.r) return "r differs across periods at k=" + fmt(k);
    }
    return std::string();
  });

  r.add("stab.phi_routes", [&] {
    const int n = quick ? 256 : 512;
    for (const auto& [L, k] : {std::pair{16.0, 0.3}, std::pair{20.0, 0.5}}) {
      const WaveParams p = params_from_modulus(L, k);
      const double an = stability::phi_analytic(p);
      const double nu = stability::phi_numeric(p, n);
      const double gr = stability::phi_gradient_route(p, n);
      const double cr = stability::phi_conserved_route(p, n);
      if (std::fabs(nu - an) > 1e-3 * std::fabs(an)) return "pairing route at L=" + fmt(L);
      if (std::fabs(gr - an) > 1e-4 * std::fabs(an)) return "gradient route at L=" + fmt(L);
      if (std::fabs(cr - an) > 1e-4 * std::fabs(an)) return "conserved route at L=" + fmt(L);
      const double nu2 = stability::phi_numeric(p, n, 5e-6);
      if (std::fabs(nu2 - nu) > 1e-5 * std::fabs(nu)) return "k-step convergence at L=" + fmt(L);
    }
    return std::string();
  });

  r.add("stab.cn_power_recursion", [&] {
    const WaveParams p = params_from_modulus(16.0, 0.3);
    const auto C = stability::cn_power_integrals(p, 5);
    const int n = 8192;
    for (int pw = 1; pw <= 5; ++pw) {
      std::vector<double> f(static_cast<size_t>(n));
      for (int j = 0; j < n; ++j) {
        const double cn = elliptic::jacobi(p.L * j / n / p.eta, Modulus(p.k)).cn;
        f[static_cast<size_t>(j)] = std::pow(cn * cn, pw);
      }
      const double quad = fourier::integrate(f, p.L);
      if (std::fabs(quad - C[static_cast<size_t>(pw - 1)]) > 1e-10 * std::max(1.0, quad))
        return "cn^" + std::to_string(2 * pw) + " integral";
    }
    return std::string();
  });

  r.add("stab.conserved_representations", [&] {
    for (const auto& [L, k] : {std::pair{16.0, 0.3}, std::pair{20.0, 0.5}}) {
      const WaveParams p = params_from_modulus(L, k);
      const auto rep = stability::conserved_representations(p);
      const int n = 4096;
      std::vector<double> phi(static_cast<size_t>(n));
      for (int j = 0; j < n; ++j) phi[static_cast<size_t>(j)] = profile(p, L * j / n).phi;
      std::vector<double> phi2(phi);
      for (double& v : phi2) v *= v;
      const auto dphi = fourier::spectral_derivative(phi, L, 1);
      std::vector<double> dphi2(static_cast<size_t>(n));
      for (int j = 0; j < n; ++j) dphi2[static_cast<size_t>(j)] = dphi[static_cast<size_t>(j)] * dphi[static_cast<size_t>(j)];
      if (std::fabs(rep.v_int - fourier::integrate(phi, L)) > 1e-9 * rep.v_int)
        return std::string("integral of phi");
      if (std::fabs(rep.phi2_int - fourier::integrate(phi2, L)) > 1e-9 * rep.phi2_int)
        return std::string("integral of phi^2");
      if (std::fabs(rep.dphi_int - fourier::integrate(dphi2, L)) >
          1e-9 * std::max(1.0, rep.dphi_int))
        return std::string("integral of phi'^2");
    }
    return std::string();
  });

  r.add("stab.M_properties", [&] {
    const WaveParams p = params_from_modulus(16.0, 0.3);
    const int n = 512;
    std::vector<double> zero(static_cast<size_t>(n), 0.0), phi(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) phi[static_cast<size_t>(j)] = profile(p, p.L * j / n).phi;
    if (std::fabs(stability::M_functional(p, zero)) > 1e-14) return std::string("M(0) != 0");
    const double m1v = stability::M_functional(p, phi);
    if (std::fabs(m1v - stability::M_functional(p)) > 1e-8 * std::fabs(m1v))
      return std::string("closed form vs sampled M");
    std::vector<double> twophi(phi);
    for (double& v : twophi) v *= 2.0;
    const auto d = dparams_dk(p);
    const auto cons = stability::conserved_at(phi, p.L);
    const double expected = 4.0 * d.dc_dk * cons.Q + 2.0 * d.dA_dk * cons.V;
    if (std::fabs(stability::M_functional(p, twophi) - expected) > 1e-8 * std::fabs(expected))
      return std::string("homogeneity");
    return std::string();
  });

  // ---- evolution ----------------------------------------------------------
  r.add("evo.kernel_basics", [&] {
    const int n = 128;
    const double L = 16.0;
    evolution::PeriodicField f{L, std::vector<double>(static_cast<size_t>(n), 3.7)};
    for (double v : evolution::apply_kernel(f).values) {
      if (std::fabs(v) > 1e-14) return std::string("constants not annihilated");
    }
    const double xi = 2.0 * kPi / L;
    for (int j = 0; j < n; ++j) f.values[static_cast<size_t>(j)] = std::cos(xi * j * L / n);
    const auto out = evolution::apply_kernel(f);
    for (int j = 0; j < n; ++j) {
      const double want = xi / (1.0 + xi * xi) * std::sin(xi * j * L / n);
      if (std::fabs(out.values[static_cast<size_t>(j)] - want) > 1e-14)
        return std::string("single mode symbol");
    }
    for (int j = 0; j < n; ++j) f.values[static_cast<size_t>(j)] = rand_unit(gen);
    const auto rnd = evolution::apply_kernel(f);
    if (std::fabs(fourier::integrate(rnd.values, L)) > 1e-13)
      return std::string("kernel output mean");
    return std::string();
  });

  r.add("evo.rhs_fixed_points", [&] {
    const int n = 64;
    evolution::PeriodicField f{16.0, std::vector<double>(static_cast<size_t>(n), 0.0)};
    for (double v : evolution::rhs(f).values) {
      if (v != 0.0) return std::string("zero field");
    }
    std::fill(f.values.begin(), f.values.end(), 2.5);
    for (double v : evolution::rhs(f).values) {
      if (std::fabs(v) > 1e-13) return std::string("constant field");
    }
    return std::string();
  });

  r.add("evo.rk4_order", [&] {
    const WaveParams p = params_from_modulus(16.0, 0.3);
    const int n = 128;
    auto sup_err = [&](double dt) {
      evolution::PeriodicField u = evolution::sample_profile(p, n);
      evolution::EvolveConfig cfg;
      cfg.dt = dt;
      cfg.t_max = 1.0;
      cfg.record_every = 1 << 30;
      const long steps = std::lround(1.0 / dt);
      for (long s2 = 0; s2 < steps; ++s2) u = evolution::step(u, cfg);
      const auto exact = evolution::sample_profile(p, n, p.c * 1.0);
      double err = 0.0;
      for (int j = 0; j < n; ++j) {
        err = std::max(err, std::fabs(u.values[static_cast<size_t>(j)] -
                                      exact.values[static_cast<size_t>(j)]));
      }
      return err;
    };
    const double e1 = sup_err(0.1), e2 = sup_err(0.05);
    return fail_if(!(e1 / e2 >= 12.0), "error ratio " + fmt(e1 / e2));
  });

  r.add("evo.traveling_wave", [&] {
    const WaveParams p = params_from_modulus(16.0, 0.3);
    const double t_end = quick ? 0.5 : 1.0;
    evolution::EvolveConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_max = t_end;
    cfg.record_every = 1 << 30;
    const auto trace = evolution::run_experiment(p, 0.0, cfg, 256);
    if (!(trace.back().rho <= 1e-5)) return "orbit drift " + fmt(trace.back().rho);
    return std::string();
  });

  r.add("evo.conservation", [&] {
    const WaveParams p = params_from_modulus(16.0, 0.3);
    evolution::EvolveConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_max = quick ? 2.0 : 10.0;
    cfg.record_every = 500;
    const auto trace = evolution::run_experiment(p, 1e-3, cfg, 256);
    const auto& first = trace.front();
    for (const auto& rec : trace) {
      if (std::fabs(rec.E - first.E) > 1e-7 * std::fabs(first.E)) return std::string("E drift");
      if (std::fabs(rec.Q - first.Q) > 1e-7 * std::fabs(first.Q)) return std::string("Q drift");
      if (std::fabs(rec.V - first.V) > 1e-7 * std::fabs(first.V)) return std::string("V drift");
    }
    return std::string();
  });

  r.add("evo.picard_vs_rk4", [&] {
    const WaveParams p = params_from_modulus(16.0, 0.3);
    const int n = 128;
    evolution::PeriodicField a = evolution::sample_profile(p, n);
    const auto pert = evolution::seeded_perturbation(p.L, n, 1e-2, 42);
    for (int j = 0; j < n; ++j) a.values[static_cast<size_t>(j)] += pert[static_cast<size_t>(j)];
    evolution::PeriodicField b = a;
    evolution::EvolveConfig ca, cb;
    ca.dt = cb.dt = 1e-3;
    cb.scheme = evolution::Scheme::Picard;
    cb.picard_iters = 4;
    for (int s2 = 0; s2 < 100; ++s2) {
      a = evolution::step(a, ca);
      b = evolution::step(b, cb);
    }
    double diff = 0.0;
    for (int j = 0; j < n; ++j) {
      diff = std::max(diff, std::fabs(a.values[static_cast<size_t>(j)] -
                                      b.values[static_cast<size_t>(j)]));
    }
    return fail_if(diff > 1e-4, "scheme difference " + fmt(diff));
  });

  r.add("evo.rho_properties", [&] {
    const WaveParams p = params_from_modulus(16.0, 0.3);
    const int n = 256;
    const auto ref = evolution::sample_profile(p, n);
    const auto shifted = evolution::sample_profile(p, n, p.L / 3.0);
    const auto d = evolution::orbital_distance(shifted, p);
    if (d.rho > 1e-10) return "shifted wave distance " + fmt(d.rho);
    const double eps = 1e-3, xi = 2.0 * kPi / p.L;
    evolution::PeriodicField pertd = ref;
    for (int j = 0; j < n; ++j) {
      pertd.values[static_cast<size_t>(j)] += eps * std::cos(xi * p.L * j / n);
    }
    const double bound = eps * std::sqrt(p.L * (1.0 + xi * xi) / 2.0) * (1.0 + 1e-6);
    const auto dp = evolution::orbital_distance(pertd, p);
    if (dp.rho > bound) return "single-mode bound " + fmt(dp.rho) + " vs " + fmt(bound);
    const auto dab = evolution::orbital_distance(pertd, ref);
    const auto dba = evolution::orbital_distance(ref, pertd);
    if (std::fabs(dab.rho - dba.rho) > 1e-9) return std::string("orbit symmetry");
    return std::string();
  });

  r.add("evo.experiment_determinism", [&] {
    const WaveParams p = params_from_modulus(16.0, 0.3);
    evolution::EvolveConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_max = quick ? 2.0 : 5.0;
    cfg.record_every = 200;
    const auto t1 = evolution::run_experiment(p, 1e-3, cfg, 256, 777);
    const auto t2 = evolution::run_experiment(p, 1e-3, cfg, 256, 777);
    if (t1.size() != t2.size()) return std::string("trace length");
    for (size_t i = 0; i < t1.size(); ++i) {
      if (t1[i].rho != t2[i].rho || t1[i].E != t2[i].E) return std::string("bitwise repeat");
      if (!(t1[i].rho <= 10.0 * 1e-3)) return "orbit excursion " + fmt(t1[i].rho);
    }
    return std::string();
  });

  return results;
}

}  // namespace schamel::verify
