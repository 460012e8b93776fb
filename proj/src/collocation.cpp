#include "schamel/collocation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "schamel/lame.hpp"

namespace schamel {

namespace {
constexpr double kPi = std::numbers::pi;
}

Grid Grid::uniform(int n, double L) {
  if (n < 64 || n % 2 != 0) {
    throw std::invalid_argument("grid size must be even and >= 64");
  }
  if (!(L > 0.0)) {
    throw std::invalid_argument("grid period must be positive");
  }
  Grid g{n, L, {}};
  g.nodes.resize(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) g.nodes[static_cast<size_t>(j)] = L * j / n;
  return g;
}

double SymmetricMatrix::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::fabs(v));
  return m;
}

double SymmetricMatrix::symmetry_error() const {
  double m = 0.0;
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      m = std::max(m, std::fabs((*this)(i, j) - (*this)(j, i)));
    }
  }
  return m;
}

std::vector<double> SymmetricMatrix::multiply(const std::vector<double>& v) const {
  std::vector<double> out(static_cast<size_t>(n_), 0.0);
  for (int i = 0; i < n_; ++i) {
    const double* row = a_.data() + static_cast<size_t>(i) * n_;
    double acc = 0.0;
    for (int j = 0; j < n_; ++j) acc += row[j] * v[static_cast<size_t>(j)];
    out[static_cast<size_t>(i)] = acc;
  }
  return out;
}

SymmetricMatrix second_derivative_matrix(const Grid& g) {
  const int n = g.n;
  const double h = 2.0 * kPi / n;
  const long double scale = static_cast<long double>(2.0 * kPi / g.L) *
                            static_cast<long double>(2.0 * kPi / g.L);
  // Circulant stencil: off-diagonal entries from the band-limited interpolant,
  // diagonal from the exact zero row sum (constants in the kernel).
  std::vector<double> c(static_cast<size_t>(n));
  long double diag = 0.0L;
  for (int m = 1; m < n; ++m) {
    const long double sm = std::sin(0.5L * m * static_cast<long double>(h));
    const long double val = -((m % 2 == 0) ? 1.0L : -1.0L) / (2.0L * sm * sm) * scale;
    c[static_cast<size_t>(m)] = static_cast<double>(val);
    diag -= val;
  }
  c[0] = static_cast<double>(diag);
  SymmetricMatrix d(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      d(i, j) = c[static_cast<size_t>((i - j + n) % n)];
    }
  }
  return d;
}

SymmetricMatrix linearized_operator(const WaveParams& p, const Grid& g) {
  if (std::fabs(g.L - p.L) > 1e-12 * p.L) {
    throw std::invalid_argument("grid period must equal the wave period");
  }
  SymmetricMatrix m = second_derivative_matrix(g);
  const int n = g.n;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) *= -p.c;
  }
  for (int i = 0; i < n; ++i) {
    const double psi = profile(p, g.nodes[static_cast<size_t>(i)]).psi;
    m(i, i) += (p.c - 1.0) - 1.5 * psi;
  }
  return m;
}

EigenDecomposition symmetric_eigen(const SymmetricMatrix& m) {
  const int n = m.size();
  std::vector<double> a = m.data();
  // eigenvectors kept as rows so a rotation touches two contiguous spans
  std::vector<double> v(static_cast<size_t>(n) * n, 0.0);
  std::vector<double> d(static_cast<size_t>(n)), b(static_cast<size_t>(n)),
      z(static_cast<size_t>(n), 0.0);
  auto at = [&](int i, int j) -> double& { return a[static_cast<size_t>(i) * n + j]; };
  for (int i = 0; i < n; ++i) {
    v[static_cast<size_t>(i) * n + i] = 1.0;
    b[static_cast<size_t>(i)] = d[static_cast<size_t>(i)] = at(i, i);
  }

  bool converged = false;
  for (int sweep = 0; sweep < 60 && !converged; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) off += std::fabs(at(i, j));
    }
    if (off == 0.0) {
      converged = true;
      break;
    }
    const double thresh = (sweep < 3) ? 0.2 * off / (n * n) : 0.0;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double& apq = at(p, q);
        const double g = 100.0 * std::fabs(apq);
        if (sweep > 3 && std::fabs(d[static_cast<size_t>(p)]) + g == std::fabs(d[static_cast<size_t>(p)]) &&
            std::fabs(d[static_cast<size_t>(q)]) + g == std::fabs(d[static_cast<size_t>(q)])) {
          apq = 0.0;
          continue;
        }
        if (std::fabs(apq) <= thresh) continue;

        const double hdiff = d[static_cast<size_t>(q)] - d[static_cast<size_t>(p)];
        double t;
        if (std::fabs(hdiff) + g == std::fabs(hdiff)) {
          t = apq / hdiff;
        } else {
          const double theta = 0.5 * hdiff / apq;
          t = 1.0 / (std::fabs(theta) + std::sqrt(1.0 + theta * theta));
          if (theta < 0.0) t = -t;
        }
        const double cth = 1.0 / std::sqrt(1.0 + t * t);
        const double sth = t * cth;
        const double tau = sth / (1.0 + cth);
        const double h = t * apq;
        z[static_cast<size_t>(p)] -= h;
        z[static_cast<size_t>(q)] += h;
        d[static_cast<size_t>(p)] -= h;
        d[static_cast<size_t>(q)] += h;
        apq = 0.0;

        auto rotate = [&](double& x, double& y) {
          const double gx = x, hy = y;
          x = gx - sth * (hy + gx * tau);
          y = hy + sth * (gx - hy * tau);
        };
        for (int j = 0; j < p; ++j) rotate(at(j, p), at(j, q));
        for (int j = p + 1; j < q; ++j) rotate(at(p, j), at(j, q));
        for (int j = q + 1; j < n; ++j) rotate(at(p, j), at(q, j));
        double* vp = v.data() + static_cast<size_t>(p) * n;
        double* vq = v.data() + static_cast<size_t>(q) * n;
        for (int j = 0; j < n; ++j) rotate(vp[j], vq[j]);
      }
    }
    for (int i = 0; i < n; ++i) {
      b[static_cast<size_t>(i)] += z[static_cast<size_t>(i)];
      d[static_cast<size_t>(i)] = b[static_cast<size_t>(i)];
      z[static_cast<size_t>(i)] = 0.0;
    }
  }
  if (!converged) {
    throw std::runtime_error("jacobi eigensolver did not converge in the sweep budget");
  }

  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    return d[static_cast<size_t>(i)] < d[static_cast<size_t>(j)];
  });

  EigenDecomposition out{n, {}, {}};
  out.values.resize(static_cast<size_t>(n));
  out.vectors.resize(static_cast<size_t>(n) * n);
  for (int col = 0; col < n; ++col) {
    const int src = order[static_cast<size_t>(col)];
    out.values[static_cast<size_t>(col)] = d[static_cast<size_t>(src)];
    for (int r = 0; r < n; ++r) {
      out.vectors[static_cast<size_t>(col) * n + r] = v[static_cast<size_t>(src) * n + r];
    }
  }
  return out;
}

SpectrumReport spectrum_report(const WaveParams& p, const Grid& g) {
  const auto analytic = lame::operator_eigenvalues(p);
  const auto eig = symmetric_eigen(linearized_operator(p, g));

  SpectrumReport rep{};
  for (int i = 0; i < 5; ++i) {
    const double an = analytic.lambda[static_cast<size_t>(i)];
    const double nu = eig.values[static_cast<size_t>(i)];
    const double gap = std::fabs(an - nu);
    rep.rows[static_cast<size_t>(i)] = {
        i, an, nu, gap, an != 0.0 ? gap / std::fabs(an) : gap};
  }
  rep.negative_count = 0;
  for (double lam : eig.values) {
    if (lam < -1e-8) ++rep.negative_count;
  }
  rep.numeric_lambda1 = eig.values[1];
  rep.sixth_numeric = eig.values[5];

  const bool zero_mode_ok = std::fabs(rep.numeric_lambda1) < 1e-8;
  const bool simple0 = eig.values[1] - eig.values[0] > 1e-6;
  const bool simple1 = eig.values[2] - eig.values[1] > 1e-6;
  bool agree = true;
  for (int i = 0; i < 5; ++i) {
    const auto& row = rep.rows[static_cast<size_t>(i)];
    if (i == 1) {
      agree = agree && std::fabs(row.numeric) < 1e-8;
    } else {
      agree = agree && row.rel_gap <= 1e-6;
    }
  }
  rep.pattern_ok = (rep.negative_count == 1) && zero_mode_ok && simple0 && simple1 && agree;
  return rep;
}

}  // namespace schamel
