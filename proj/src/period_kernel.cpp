#include "syt/period_kernel.hpp"

#include "syt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace syt {

namespace {

void require_k_range(const ModelParams& params, double K) {
  if (!(K > 0.0 && K <= params.k_max())) {
    std::ostringstream os;
    os << "K outside (0, lambda/2]: K = " << K << ", lambda/2 = " << params.k_max();
    throw DomainError(os.str());
  }
}

// Imaginary distance from theta = 0 to the nearest complex singularity of the
// angle-form integrand, where s(theta) = -s0.
double angle_singular_scale(const Roots& r) {
  const double width = r.s1 - r.s0;
  if (!(width > 0.0)) return 0.0;
  return std::asinh(std::sqrt(2.0 * r.s0 / width));
}

} // namespace

bool is_degenerate(const ModelParams& params, double K) {
  return K >= params.k_max() - kDegenerateGap * params.lambda;
}

Roots roots(const ModelParams& params, double K) {
  params.validate();
  require_k_range(params, K);
  const double lambda = params.lambda;
  const double disc = std::sqrt(std::max(lambda * (lambda - 2.0 * K), 0.0));
  Roots r;
  r.s1 = lambda + disc;
  // Vieta (s0 s1 = 2 lambda K) avoids cancellation in lambda - disc.
  r.s0 = 2.0 * lambda * K / r.s1;
  return r;
}

double f_kernel(const ModelParams& params, double K, double s) {
  params.validate();
  if (!(s >= 0.0)) throw DomainError("F_K is defined for s >= 0, got s = " + std::to_string(s));
  const double q = s * s / (2.0 * params.lambda) + K;
  return s * s - q * q;
}

double f_kernel_factored(const ModelParams& params, double K, double s) {
  if (!(s >= 0.0)) throw DomainError("F_K is defined for s >= 0, got s = " + std::to_string(s));
  const Roots r = roots(params, K);
  const double two_lambda = 2.0 * params.lambda;
  return (s - r.s0) * (r.s1 - s) * (s + s * s / two_lambda + K) / two_lambda;
}

double profile_at_angle(const Roots& r, double theta) {
  const double sn = std::sin(theta);
  return r.s0 + (r.s1 - r.s0) * sn * sn;
}

double eta_angle_derivative(const Roots& r, double theta) {
  const double s = profile_at_angle(r, theta);
  return 2.0 / std::sqrt((s + r.s0) * (s + r.s1));
}

QuadratureResult eta_to_angle(const ModelParams& params, double K, double theta, double tol) {
  params.validate();
  require_k_range(params, K);
  if (is_degenerate(params, K))
    throw DegenerateError("K is within the degenerate zone at lambda/2; the half-period exists "
                          "only as the limit pi/(2 lambda)");
  if (!(theta >= 0.0 && theta <= 0.5 * std::numbers::pi))
    throw DomainError("angle outside [0, pi/2]");
  const Roots r = roots(params, K);
  auto integrand = [&r](double th) { return eta_angle_derivative(r, th); };
  return integrate_graded(integrand, 0.0, theta, angle_singular_scale(r), tol);
}

QuadratureResult eta(const ModelParams& params, double K, double f_upper, double tol) {
  params.validate();
  require_k_range(params, K);
  if (is_degenerate(params, K))
    throw DegenerateError("K is within the degenerate zone at lambda/2; the half-period exists "
                          "only as the limit pi/(2 lambda)");
  const Roots r = roots(params, K);
  if (!(f_upper >= r.s0 && f_upper <= r.s1)) {
    std::ostringstream os;
    os << "f_upper outside [s0, s1] = [" << r.s0 << ", " << r.s1 << "]: " << f_upper;
    throw DomainError(os.str());
  }
  const double ratio = std::clamp((f_upper - r.s0) / (r.s1 - r.s0), 0.0, 1.0);
  const double theta = ratio >= 1.0 ? 0.5 * std::numbers::pi : std::asin(std::sqrt(ratio));
  return eta_to_angle(params, K, theta, tol);
}

PeriodResult half_period(const ModelParams& params, double K, double tol) {
  const Roots r = roots(params, K);
  const QuadratureResult q = eta_to_angle(params, K, 0.5 * std::numbers::pi, tol);
  return PeriodResult{K, r.s0, r.s1, q.value, q.err};
}

} // namespace syt
