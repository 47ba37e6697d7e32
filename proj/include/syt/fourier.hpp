#pragma once

#include <complex>
#include <span>
#include <vector>

typedef struct fftw_plan_s* fftw_plan;

namespace syt {

using Complex = std::complex<double>;

/// Owning wrapper around a pair of complex-to-complex FFTW plans of one size.
///
/// Planning goes through a process-wide mutex (the FFTW planner is not
/// thread-safe); execution is safe from several threads at once because each
/// call brings its own arrays. Plans use FFTW_ESTIMATE so results are
/// reproducible run to run.
class FourierTransform {
public:
  explicit FourierTransform(int n);
  ~FourierTransform();

  FourierTransform(const FourierTransform&) = delete;
  FourierTransform& operator=(const FourierTransform&) = delete;
  FourierTransform(FourierTransform&& other) noexcept;
  FourierTransform& operator=(FourierTransform&& other) noexcept;

  int size() const { return n_; }

  /// out[m] = sum_j in[j] exp(-2 pi i j m / n)
  void forward(std::span<const Complex> in, std::span<Complex> out) const;
  /// out[j] = sum_m in[m] exp(+2 pi i j m / n)
  void backward(std::span<const Complex> in, std::span<Complex> out) const;

private:
  void release() noexcept;

  int n_ = 0;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

/// Signed frequency index of FFT slot m on an n-point grid, in (-n/2, n/2].
inline int signed_frequency(int m, int n) { return m <= n / 2 ? m : m - n; }

/// Derivative of uniformly sampled periodic data with the given period.
/// The Nyquist mode of even-length grids is dropped.
std::vector<double> spectral_derivative(std::span<const double> samples, double period);
std::vector<Complex> spectral_derivative(std::span<const Complex> samples, double period);

/// Trapezoid integral of periodic samples over one period (spectrally exact
/// for band-limited data).
double periodic_integral(std::span<const double> samples, double period);

} // namespace syt
