#pragma once

#include <cstdint>
#include <vector>

#include "schamel/wave.hpp"

namespace schamel::evolution {

// Uniform samples of a real L-periodic function; the state of the solver.
struct PeriodicField {
  double L;
  std::vector<double> values;

  int n() const noexcept { return static_cast<int>(values.size()); }
};

PeriodicField sample_profile(const WaveParams& p, int n);
// Profile translated by shift (phi_k(x - shift) sampled on the grid).
PeriodicField sample_profile(const WaveParams& p, int n, double shift);

enum class Scheme { Rk4, Picard };

struct EvolveConfig {
  double dt = 1e-3;
  double t_max = 1.0;
  Scheme scheme = Scheme::Rk4;
  int picard_iters = 4;
  int record_every = 100;
};

// K * f where the convolution kernel acts as the Fourier multiplier
// -i xi / (1 + xi^2), xi_n = 2 pi n / L; the Nyquist mode is zeroed.
PeriodicField apply_kernel(const PeriodicField& f);

// Right side of the evolution written as u_t = K * (u + |u|^{3/2}).
PeriodicField rhs(const PeriodicField& u);

// One time step of the chosen scheme. The Picard variant iterates the
// short-interval integral fixed point with a trapezoid rule in time.
PeriodicField step(const PeriodicField& u, const EvolveConfig& cfg);

struct ConservedTriple {
  double E, Q, V;
};
ConservedTriple conserved(const PeriodicField& u);

struct OrbitalDistance {
  double rho;
  double shift;  // the minimizing translation of the reference
};

// rho(u, v) = inf_r || u - v(.+r) ||_{H^1}: all grid shifts scanned through
// the weighted cross-correlation, then golden-section refinement.
OrbitalDistance orbital_distance(const PeriodicField& u, const PeriodicField& reference);
OrbitalDistance orbital_distance(const PeriodicField& u, const WaveParams& p);

struct TraceRecord {
  double t;
  double rho;
  double E, Q, V;
};

// Evolve phi_k plus a seeded band-limited perturbation of H^1 norm epsilon,
// recording the orbit distance and the conserved triple.
std::vector<TraceRecord> run_experiment(const WaveParams& p, double epsilon,
                                        const EvolveConfig& cfg, int grid_n = 256,
                                        std::uint64_t seed = 0x5eed0001u);

// The perturbation used by run_experiment (modes 1..8, 1/m^2 amplitude decay,
// phases from the seed, rescaled to exact H^1 norm epsilon).
std::vector<double> seeded_perturbation(double L, int n, double epsilon, std::uint64_t seed);

// Discrete H^1 norm through Fourier coefficients.
double h1_norm(const PeriodicField& f);

}  // namespace schamel::evolution
