#include "schamel/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>

#include "schamel/fourier.hpp"

namespace schamel::evolution {

namespace {

constexpr double kPi = std::numbers::pi;

void require_field(const PeriodicField& f) {
  if (f.n() < 64 || f.n() % 2 != 0) {
    throw std::invalid_argument("field needs an even grid of at least 64 points");
  }
  if (!(f.L > 0.0)) {
    throw std::invalid_argument("field period must be positive");
  }
  for (double v : f.values) {
    if (!std::isfinite(v)) throw std::invalid_argument("field values must be finite");
  }
}

void require_config(const EvolveConfig& cfg) {
  if (!(cfg.dt > 0.0 && cfg.dt <= 0.1)) {
    throw std::invalid_argument("time step must lie in (0, 0.1]");
  }
  if (cfg.record_every < 1) {
    throw std::invalid_argument("record cadence must be at least 1");
  }
  const double steps = cfg.t_max / cfg.dt;
  if (!(cfg.t_max > 0.0) || std::fabs(steps - std::lround(steps)) > 1e-6 * std::max(1.0, steps)) {
    throw std::invalid_argument("t_max must be an integer number of steps");
  }
}

double signed_pow32(double u) {
  const double m = std::fabs(u);
  return m * std::sqrt(m);  // |u|^{3/2}
}

// FFT workspace plus the kernel symbol for one grid, reused across steps.
class Workspace {
 public:
  Workspace(int n, double L)
      : fft_(n), coef_(static_cast<size_t>(fft_.spectrum_size())), sym_(coef_.size()), n_(n) {
    for (size_t m = 0; m < sym_.size(); ++m) {
      const double xi = 2.0 * kPi * static_cast<double>(m) / L;
      sym_[m] = xi / (1.0 + xi * xi);
    }
    sym_.back() = 0.0;  // odd symbol: no Nyquist contribution
  }

  void apply_kernel(const std::vector<double>& in, std::vector<double>& out) {
    fft_.forward(in, coef_);
    for (size_t m = 0; m < coef_.size(); ++m) {
      // multiply by -i xi/(1+xi^2)
      coef_[m] = std::complex<double>(coef_[m].imag() * sym_[m], -coef_[m].real() * sym_[m]);
    }
    out.resize(static_cast<size_t>(n_));
    fft_.inverse(coef_, out);
  }

  void rhs(const std::vector<double>& u, std::vector<double>& out) {
    scratch_.resize(u.size());
    for (size_t j = 0; j < u.size(); ++j) scratch_[j] = u[j] + signed_pow32(u[j]);
    apply_kernel(scratch_, out);
  }

 private:
  fourier::RealFft fft_;
  std::vector<std::complex<double>> coef_;
  std::vector<double> sym_;
  std::vector<double> scratch_;
  int n_;
};

void guard_blowup(const std::vector<double>& u) {
  for (double v : u) {
    if (!(std::fabs(v) <= 1e6)) {
      throw std::runtime_error("solution magnitude exceeded the blow-up guard");
    }
  }
}

void rk4_step(Workspace& w, std::vector<double>& u, double dt) {
  const size_t n = u.size();
  std::vector<double> k1, k2, k3, k4, tmp(n);
  w.rhs(u, k1);
  for (size_t j = 0; j < n; ++j) tmp[j] = u[j] + 0.5 * dt * k1[j];
  w.rhs(tmp, k2);
  for (size_t j = 0; j < n; ++j) tmp[j] = u[j] + 0.5 * dt * k2[j];
  w.rhs(tmp, k3);
  for (size_t j = 0; j < n; ++j) tmp[j] = u[j] + dt * k3[j];
  w.rhs(tmp, k4);
  for (size_t j = 0; j < n; ++j) {
    u[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
  }
  guard_blowup(u);
}

// One contraction step of the integral-equation fixed point on [0, dt]:
// iterate u_end <- u0 + dt/2 (F(u0) + F(u_end)) from u_end = u0.
void picard_step(Workspace& w, std::vector<double>& u, double dt, int iters) {
  const size_t n = u.size();
  std::vector<double> f0, fe, end = u;
  w.rhs(u, f0);
  for (int it = 0; it < iters; ++it) {
    w.rhs(end, fe);
    for (size_t j = 0; j < n; ++j) end[j] = u[j] + 0.5 * dt * (f0[j] + fe[j]);
  }
  u = std::move(end);
  guard_blowup(u);
}

}  // namespace

PeriodicField sample_profile(const WaveParams& p, int n) { return sample_profile(p, n, 0.0); }

PeriodicField sample_profile(const WaveParams& p, int n, double shift) {
  PeriodicField f{p.L, std::vector<double>(static_cast<size_t>(n))};
  for (int j = 0; j < n; ++j) {
    f.values[static_cast<size_t>(j)] = profile(p, p.L * j / n - shift).phi;
  }
  return f;
}

PeriodicField apply_kernel(const PeriodicField& f) {
  require_field(f);
  Workspace w(f.n(), f.L);
  PeriodicField out{f.L, {}};
  w.apply_kernel(f.values, out.values);
  return out;
}

PeriodicField rhs(const PeriodicField& u) {
  require_field(u);
  Workspace w(u.n(), u.L);
  PeriodicField out{u.L, {}};
  w.rhs(u.values, out.values);
  return out;
}

PeriodicField step(const PeriodicField& u, const EvolveConfig& cfg) {
  require_field(u);
  if (!(cfg.dt > 0.0 && cfg.dt <= 0.1)) {
    throw std::invalid_argument("time step must lie in (0, 0.1]");
  }
  Workspace w(u.n(), u.L);  // one-step convenience entry; the driver reuses its workspace
  PeriodicField out = u;
  if (cfg.scheme == Scheme::Rk4) {
    rk4_step(w, out.values, cfg.dt);
  } else {
    picard_step(w, out.values, cfg.dt, std::max(2, cfg.picard_iters));
  }
  return out;
}

ConservedTriple conserved(const PeriodicField& u) {
  require_field(u);
  const std::vector<double> ux = fourier::spectral_derivative(u.values, u.L, 1);
  const size_t n = u.values.size();
  std::vector<double> e(n), q(n);
  for (size_t j = 0; j < n; ++j) {
    const double v = u.values[j];
    const double sgn = v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0);
    e[j] = 0.5 * (ux[j] * ux[j] - 0.8 * sgn * std::fabs(v) * std::fabs(v) * std::sqrt(std::fabs(v)));
    q[j] = 0.5 * (v * v + ux[j] * ux[j]);
  }
  return {fourier::integrate(e, u.L), fourier::integrate(q, u.L),
          fourier::integrate(u.values, u.L)};
}

double h1_norm(const PeriodicField& f) {
  require_field(f);
  fourier::RealFft fft(f.n());
  std::vector<std::complex<double>> c(static_cast<size_t>(fft.spectrum_size()));
  fft.forward(f.values, c);
  double acc = 0.0;
  for (size_t m = 0; m < c.size(); ++m) {
    const double xi = 2.0 * kPi * static_cast<double>(m) / f.L;
    const double w = (m == 0 || m + 1 == c.size()) ? 1.0 : 2.0;
    acc += w * (1.0 + xi * xi) * std::norm(c[m]);
  }
  return std::sqrt(f.L * acc);
}

namespace {

// rho^2(r) evaluated directly in Fourier space; no cancellation between the
// two field norms, so exact orbit hits come out at rounding level.
class ShiftDistance {
 public:
  ShiftDistance(const PeriodicField& u, const PeriodicField& v)
      : L_(u.L), nc_(u.n() / 2 + 1), uc_(static_cast<size_t>(nc_)), vc_(uc_.size()) {
    fourier::RealFft fft(u.n());
    fft.forward(u.values, uc_);
    fft.forward(v.values, vc_);
  }

  double rho2(double r) const {
    double acc = 0.0;
    for (size_t m = 0; m < uc_.size(); ++m) {
      const double xi = 2.0 * kPi * static_cast<double>(m) / L_;
      const double w = (m == 0 || m + 1 == uc_.size()) ? 1.0 : 2.0;
      const std::complex<double> shifted =
          vc_[m] * std::complex<double>(std::cos(xi * r), std::sin(xi * r));
      acc += w * (1.0 + xi * xi) * std::norm(uc_[m] - shifted);
    }
    return L_ * acc;
  }

 private:
  double L_;
  int nc_;
  std::vector<std::complex<double>> uc_, vc_;
};

}  // namespace

OrbitalDistance orbital_distance(const PeriodicField& u, const PeriodicField& reference) {
  require_field(u);
  if (u.n() != reference.n() || std::fabs(u.L - reference.L) > 1e-12 * u.L) {
    throw std::invalid_argument("fields must share one grid");
  }
  const ShiftDistance dist(u, reference);
  const int n = u.n();
  const double h = u.L / n;

  int best = 0;
  double best_val = dist.rho2(0.0);
  for (int j = 1; j < n; ++j) {
    const double val = dist.rho2(h * j);
    if (val < best_val) {
      best_val = val;
      best = j;
    }
  }

  // golden-section refinement inside the bracketing pair of cells
  double lo = h * (best - 1), hi = h * (best + 1);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c1 = hi - gr * (hi - lo), c2 = lo + gr * (hi - lo);
  double f1 = dist.rho2(c1), f2 = dist.rho2(c2);
  for (int it = 0; it < 90; ++it) {
    if (f1 < f2) {
      hi = c2;
      c2 = c1;
      f2 = f1;
      c1 = hi - gr * (hi - lo);
      f1 = dist.rho2(c1);
    } else {
      lo = c1;
      c1 = c2;
      f1 = f2;
      c2 = lo + gr * (hi - lo);
      f2 = dist.rho2(c2);
    }
  }
  const double r = (f1 < f2) ? c1 : c2;
  return {std::sqrt(std::max(0.0, std::min(f1, f2))), r};
}

OrbitalDistance orbital_distance(const PeriodicField& u, const WaveParams& p) {
  if (std::fabs(u.L - p.L) > 1e-12 * p.L) {
    throw std::invalid_argument("grid period must equal the wave period");
  }
  return orbital_distance(u, sample_profile(p, u.n()));
}

std::vector<double> seeded_perturbation(double L, int n, double epsilon, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  auto uniform = [&gen]() {
    // deterministic mapping to [-1, 1), independent of library distributions
    return 2.0 * (static_cast<double>(gen() >> 11) * 0x1.0p-53) - 1.0;
  };
  std::vector<double> pert(static_cast<size_t>(n), 0.0);
  for (int m = 1; m <= 8; ++m) {
    const double am = uniform() / (m * m);
    const double bm = uniform() / (m * m);
    for (int j = 0; j < n; ++j) {
      const double arg = 2.0 * kPi * m * j / n;
      pert[static_cast<size_t>(j)] += am * std::cos(arg) + bm * std::sin(arg);
    }
  }
  if (epsilon > 0.0) {
    const double norm = h1_norm({L, pert});
    for (double& v : pert) v *= epsilon / norm;
  } else {
    std::fill(pert.begin(), pert.end(), 0.0);
  }
  return pert;
}

std::vector<TraceRecord> run_experiment(const WaveParams& p, double epsilon,
                                        const EvolveConfig& cfg, int grid_n,
                                        std::uint64_t seed) {
  if (epsilon < 0.0) {
    throw std::invalid_argument("perturbation size must be nonnegative");
  }
  require_config(cfg);
  PeriodicField u = sample_profile(p, grid_n);
  const PeriodicField ref = u;
  const std::vector<double> pert = seeded_perturbation(p.L, grid_n, epsilon, seed);
  for (int j = 0; j < grid_n; ++j) u.values[static_cast<size_t>(j)] += pert[static_cast<size_t>(j)];

  Workspace w(grid_n, p.L);
  const long steps = std::lround(cfg.t_max / cfg.dt);
  std::vector<TraceRecord> trace;
  auto record = [&](double t) {
    const auto c = conserved(u);
    const auto d = orbital_distance(u, ref);
    trace.push_back({t, d.rho, c.E, c.Q, c.V});
  };
  record(0.0);
  for (long s = 1; s <= steps; ++s) {
    if (cfg.scheme == Scheme::Rk4) {
      rk4_step(w, u.values, cfg.dt);
    } else {
      picard_step(w, u.values, cfg.dt, std::max(2, cfg.picard_iters));
    }
    if (s % cfg.record_every == 0 || s == steps) {
      record(cfg.dt * static_cast<double>(s));
    }
  }
  return trace;
}

}  // namespace schamel::evolution
