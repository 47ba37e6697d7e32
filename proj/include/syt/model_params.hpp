#pragma once

#include <numbers>

namespace syt {

/// Physical parameters of the torus problem: the eigenvalue `lambda` of the
/// Dirac operator on the second circle and the circumference factor `ell` of
/// the first circle (length 2*pi*ell).
struct ModelParams {
  double lambda = 1.0;
  double ell = 1.0;

  /// Validating constructor; throws DomainError unless lambda > 0 and ell > 0.
  static ModelParams make(double lambda, double ell);

  void validate() const;

  /// Half-period of the linearization at the constant branch, pi / (2 lambda).
  double half_period_floor() const { return std::numbers::pi / (2.0 * lambda); }

  /// Volume of the constant-length solution, 4 pi^2 lambda^2 ell.
  double constant_volume() const {
    return 4.0 * std::numbers::pi * std::numbers::pi * lambda * lambda * ell;
  }

  /// Limit of the winding-1 volume as ell grows, 8 pi lambda.
  double volume_ceiling() const { return 8.0 * std::numbers::pi * lambda; }

  /// Upper end of the admissible first-integral range, lambda / 2.
  double k_max() const { return 0.5 * lambda; }
};

} // namespace syt
