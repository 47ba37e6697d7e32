#include "syt/fourier.hpp"

#include "syt/errors.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <numbers>
#include <numeric>
#include <utility>

namespace syt {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

} // namespace

FourierTransform::FourierTransform(int n) : n_(n) {
  if (n < 1) throw DomainError("FFT size must be positive");
  std::vector<Complex> scratch(static_cast<std::size_t>(n));
  std::lock_guard lock(planner_mutex());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  forward_ = fftw_plan_dft_1d(n, as_fftw(scratch.data()), as_fftw(scratch.data()), FFTW_FORWARD, flags);
  backward_ = fftw_plan_dft_1d(n, as_fftw(scratch.data()), as_fftw(scratch.data()), FFTW_BACKWARD, flags);
  if (!forward_ || !backward_) {
    release();
    throw Error("FFTW planning failed");
  }
}

FourierTransform::~FourierTransform() { release(); }

FourierTransform::FourierTransform(FourierTransform&& other) noexcept
    : n_(std::exchange(other.n_, 0)), forward_(std::exchange(other.forward_, nullptr)),
      backward_(std::exchange(other.backward_, nullptr)) {}

FourierTransform& FourierTransform::operator=(FourierTransform&& other) noexcept {
  if (this != &other) {
    release();
    n_ = std::exchange(other.n_, 0);
    forward_ = std::exchange(other.forward_, nullptr);
    backward_ = std::exchange(other.backward_, nullptr);
  }
  return *this;
}

void FourierTransform::release() noexcept {
  if (!forward_ && !backward_) return;
  std::lock_guard lock(planner_mutex());
  if (forward_) fftw_destroy_plan(forward_);
  if (backward_) fftw_destroy_plan(backward_);
  forward_ = backward_ = nullptr;
}

void FourierTransform::forward(std::span<const Complex> in, std::span<Complex> out) const {
  if (static_cast<int>(in.size()) != n_ || static_cast<int>(out.size()) != n_)
    throw DomainError("FFT buffer size mismatch");
  if (in.data() != out.data()) std::copy(in.begin(), in.end(), out.begin());
  fftw_execute_dft(forward_, as_fftw(out.data()), as_fftw(out.data()));
}

void FourierTransform::backward(std::span<const Complex> in, std::span<Complex> out) const {
  if (static_cast<int>(in.size()) != n_ || static_cast<int>(out.size()) != n_)
    throw DomainError("FFT buffer size mismatch");
  if (in.data() != out.data()) std::copy(in.begin(), in.end(), out.begin());
  fftw_execute_dft(backward_, as_fftw(out.data()), as_fftw(out.data()));
}

std::vector<Complex> spectral_derivative(std::span<const Complex> samples, double period) {
  const int n = static_cast<int>(samples.size());
  FourierTransform fft(n);
  std::vector<Complex> spec(samples.size());
  fft.forward(samples, spec);
  const double k0 = 2.0 * std::numbers::pi / period;
  for (int m = 0; m < n; ++m) {
    const int freq = signed_frequency(m, n);
    if (n % 2 == 0 && m == n / 2)
      spec[m] = 0.0;
    else
      spec[m] *= Complex(0.0, k0 * freq) / static_cast<double>(n);
  }
  fft.backward(spec, spec);
  return spec;
}

std::vector<double> spectral_derivative(std::span<const double> samples, double period) {
  std::vector<Complex> z(samples.begin(), samples.end());
  const auto dz = spectral_derivative(std::span<const Complex>(z), period);
  std::vector<double> out(samples.size());
  std::transform(dz.begin(), dz.end(), out.begin(), [](Complex c) { return c.real(); });
  return out;
}

double periodic_integral(std::span<const double> samples, double period) {
  if (samples.empty()) return 0.0;
  const double sum = std::accumulate(samples.begin(), samples.end(), 0.0);
  return sum * period / static_cast<double>(samples.size());
}

} // namespace syt
