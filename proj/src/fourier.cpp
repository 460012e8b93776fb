#include "schamel/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace schamel::fourier {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

RealFft::RealFft(int n) : n_(n) {
  if (n < 2 || n % 2 != 0) {
    throw std::invalid_argument("FFT size must be even and >= 2");
  }
  std::lock_guard<std::mutex> lock(planner_mutex());
  real_ = fftw_alloc_real(static_cast<size_t>(n_));
  cplx_ = fftw_alloc_complex(static_cast<size_t>(n_ / 2 + 1));
  plan_fwd_ = fftw_plan_dft_r2c_1d(n_, real_, static_cast<fftw_complex*>(cplx_), FFTW_ESTIMATE);
  plan_inv_ = fftw_plan_dft_c2r_1d(n_, static_cast<fftw_complex*>(cplx_), real_, FFTW_ESTIMATE);
}

RealFft::~RealFft() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_inv_));
  fftw_free(real_);
  fftw_free(cplx_);
}

void RealFft::forward(std::span<const double> in, std::span<std::complex<double>> out) const {
  if (static_cast<int>(in.size()) != n_ || static_cast<int>(out.size()) != spectrum_size()) {
    throw std::invalid_argument("FFT buffer size mismatch");
  }
  for (int j = 0; j < n_; ++j) real_[j] = in[j];
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
  const auto* c = static_cast<const fftw_complex*>(cplx_);
  const double inv_n = 1.0 / n_;
  for (int m = 0; m < spectrum_size(); ++m) {
    out[m] = std::complex<double>(c[m][0] * inv_n, c[m][1] * inv_n);
  }
}

void RealFft::inverse(std::span<const std::complex<double>> in, std::span<double> out) const {
  if (static_cast<int>(in.size()) != spectrum_size() || static_cast<int>(out.size()) != n_) {
    throw std::invalid_argument("FFT buffer size mismatch");
  }
  auto* c = static_cast<fftw_complex*>(cplx_);
  for (int m = 0; m < spectrum_size(); ++m) {
    c[m][0] = in[m].real();
    c[m][1] = in[m].imag();
  }
  fftw_execute(static_cast<fftw_plan>(plan_inv_));
  for (int j = 0; j < n_; ++j) out[j] = real_[j];
}

std::vector<double> spectral_derivative(std::span<const double> values, double period, int order) {
  const int n = static_cast<int>(values.size());
  RealFft fft(n);
  std::vector<std::complex<double>> coef(fft.spectrum_size());
  fft.forward(values, coef);
  const double base = 2.0 * std::numbers::pi / period;
  for (int m = 0; m < fft.spectrum_size(); ++m) {
    const std::complex<double> ixi(0.0, base * m);
    std::complex<double> mult(1.0, 0.0);
    for (int q = 0; q < order; ++q) mult *= ixi;
    coef[m] *= mult;
  }
  if (order % 2 != 0) coef.back() = 0.0;  // odd symbol kills the Nyquist mode
  std::vector<double> out(values.size());
  fft.inverse(coef, out);
  return out;
}

double integrate(std::span<const double> values, double period) {
  double acc = 0.0, comp = 0.0;
  for (double v : values) {  // Kahan
    const double y = v - comp;
    const double t = acc + y;
    comp = (t - acc) - y;
    acc = t;
  }
  return acc * period / static_cast<double>(values.size());
}

}  // namespace schamel::fourier
