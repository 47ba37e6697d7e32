#pragma once

#include "syt/model_params.hpp"
#include "syt/quadrature.hpp"

namespace syt {

/// Default absolute tolerance on half-period values.
inline constexpr double kDefaultEtaTolerance = 1e-10;

/// Relative distance below lambda/2 inside which K is treated as the constant
/// branch: K >= lambda/2 * (1 - 2e-12), i.e. lambda/2 - 1e-12 * lambda.
inline constexpr double kDegenerateGap = 1e-12;

struct Roots {
  double s0 = 0.0;
  double s1 = 0.0;
};

/// Half-period data for one first-integral constant.
struct PeriodResult {
  double K = 0.0;
  double s0 = 0.0;
  double s1 = 0.0;
  double eta = 0.0; ///< eta_K(s1), half the fundamental period of f
  double err = 0.0;
};

/// True when K lies in the degenerate zone next to lambda/2.
bool is_degenerate(const ModelParams& params, double K);

/// Zeros s0 <= s1 of F_K, i.e. of s^2 - 2 lambda s + 2 lambda K.
/// Throws DomainError unless 0 < K <= lambda/2.
Roots roots(const ModelParams& params, double K);

/// F_K(s) = s^2 - (s^2 / (2 lambda) + K)^2 for s >= 0.
double f_kernel(const ModelParams& params, double K, double s);

/// The same polynomial through its factorization
/// (1/(2 lambda)) (s - s0)(s1 - s)(s + s^2/(2 lambda) + K); requires 0 < K <= lambda/2.
double f_kernel_factored(const ModelParams& params, double K, double s);

/// eta_K(f_upper) = int_{s0}^{f_upper} ds / (2 lambda sqrt(F_K(s))).
///
/// Evaluated in the angle variable s = s0 + (s1 - s0) sin^2(theta), where the
/// integrand becomes 2 / sqrt((s + s0)(s + s1)) and both endpoint
/// singularities disappear. Throws DomainError for f_upper outside [s0, s1] or
/// K outside (0, lambda/2), DegenerateError in the degenerate zone.
QuadratureResult eta(const ModelParams& params, double K, double f_upper,
                     double tol = kDefaultEtaTolerance);

/// eta_K(s1) together with the roots.
PeriodResult half_period(const ModelParams& params, double K, double tol = kDefaultEtaTolerance);

/// Point on the profile at angle theta: s0 + (s1 - s0) sin^2(theta).
double profile_at_angle(const Roots& r, double theta);

/// d(eta)/d(theta) = 2 / sqrt((s + s0)(s + s1)) at s = profile_at_angle(theta).
double eta_angle_derivative(const Roots& r, double theta);

/// Time elapsed from the minimum s0 to the angle theta in [0, pi/2].
QuadratureResult eta_to_angle(const ModelParams& params, double K, double theta,
                              double tol = kDefaultEtaTolerance);

} // namespace syt
