#pragma once

#include <complex>
#include <span>
#include <vector>

namespace schamel::fourier {

// Real-to-complex FFT workspace for one grid size. Plans and buffers are
// per-instance: execution is safe from the owning thread, and plan
// creation/destruction is serialized internally (the FFTW planner is not
// thread-safe).
class RealFft {
 public:
  explicit RealFft(int n);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  int size() const noexcept { return n_; }
  int spectrum_size() const noexcept { return n_ / 2 + 1; }

  // out[m] = (1/n) sum_j in[j] e^{-2 pi i j m / n}, m = 0 .. n/2.
  void forward(std::span<const double> in, std::span<std::complex<double>> out) const;
  // Inverse of forward (unnormalized FFTW c2r compensates the 1/n).
  void inverse(std::span<const std::complex<double>> in, std::span<double> out) const;

 private:
  int n_;
  double* real_;
  void* cplx_;
  void* plan_fwd_;
  void* plan_inv_;
};

// Spectral derivative of given order of an L-periodic sample vector.
// Odd orders zero the Nyquist mode (odd symbol), even orders keep it.
std::vector<double> spectral_derivative(std::span<const double> values, double period, int order);

// Periodic trapezoid rule: mean times period. Spectrally exact for
// band-limited integrands.
double integrate(std::span<const double> values, double period);

}  // namespace schamel::fourier
