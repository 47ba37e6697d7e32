#pragma once

#include "syt/fourier.hpp"
#include "syt/model_params.hpp"
#include "syt/period_kernel.hpp"

#include <string>
#include <vector>

namespace syt {

/// Residual budget above which reconstruct() refuses a profile.
inline constexpr double kResidualBudget = 1e-6;

/// Result of inverting the period condition eta_K(s1) = target.
struct BranchSolve {
  double K = 0.0;
  double log_K = 0.0; ///< ln K; stays finite when K itself underflows
  double err = 0.0;   ///< bound on |eta_K(s1) - target|
  /// The target lies beyond the half-periods resolvable with K in double
  /// range; K was extrapolated along the logarithmic tail and may be 0.
  bool underflow = false;
};

/// Sampled periodic solution of the reduced real system on [0, 2 pi ell).
///
/// Canonical gauge: f(0) = s0 and f increases on [0, eta_K(s1)].
/// k = 0 marks the constant branch (K = lambda/2).
struct TorusSolution {
  ModelParams params;
  double K = 0.0;
  int k = 0;
  std::vector<double> t;
  std::vector<double> f; ///< 2u^2 + 2v^2
  std::vector<double> g; ///< 2u^2 - 2v^2
  std::vector<double> u;
  std::vector<double> v;
  double volume = 0.0;
  double residual_sup = 0.0;

  bool is_constant() const { return k == 0; }
  int n_grid() const { return static_cast<int>(t.size()); }
};

/// Two-component spinor psi = (psi1, psi2) on the first circle; the field on
/// the torus is (psi1 + psi2) (x) exp(-i lambda tau).
struct SpinorField {
  TorusSolution solution;
  double theta = 0.0;
  std::vector<Complex> psi1;
  std::vector<Complex> psi2;
};

/// Unique K in (0, lambda/2) with eta_K(s1) = half_period_target, by
/// bisection in ln K. Throws NoBranchError when the target does not exceed
/// pi / (2 lambda).
BranchSolve solve_K(const ModelParams& params, double half_period_target);

/// Volume of the k-winding solution with first-integral constant K,
/// (2 k pi / lambda) int_{s0}^{s1} s^2 / sqrt(F_K(s)) ds.
///
/// K = lambda/2 exactly returns the constant-branch value 4 pi^2 lambda^2 ell;
/// inside the degenerate zone below it the winding limit 2 pi^2 lambda k is
/// returned.
double volume(const ModelParams& params, double K, int k);

/// 8 pi lambda k - volume(params, K, k), evaluated from an integrand that is
/// already proportional to s0, so it keeps full relative accuracy as K -> 0.
double volume_gap(const ModelParams& params, double K, int k);

/// Samples the k-winding profile with constant K on n_grid points.
/// Throws DomainError for K outside (0, lambda/2] or a bad grid,
/// ToleranceError if the ODE residual exceeds kResidualBudget.
TorusSolution reconstruct(const ModelParams& params, double K, int k, int n_grid = 1024);

/// Constant-length solution u = v = sqrt(lambda)/2 on n_grid points.
TorusSolution constant_solution(const ModelParams& params, int n_grid = 1024);

/// psi1 = (u + i v) e^{i theta}, psi2 = (u - i v) e^{i theta}.
SpinorField spinor_lift(const TorusSolution& solution, double theta);

/// Sup-norm residual of u' + lambda u = f v, -v' + lambda v = f u with
/// spectral derivatives over the period 2 pi ell.
double reduced_residual(const ModelParams& params, const std::vector<double>& u,
                        const std::vector<double>& v);

/// Sup-norm residual of the complex two-component system.
double spinor_residual(const SpinorField& field);

/// max_j |g_j^2 - F_K(f_j)|.
double first_integral_defect(const TorusSolution& solution);

/// Outcome of re-checking every TorusSolution invariant.
struct SolutionCheck {
  bool ok = true;
  std::vector<std::string> failures;
  double range_excess = 0.0;       ///< how far f leaves [s0, s1]
  double first_integral = 0.0;     ///< first_integral_defect
  double component_defect = 0.0;   ///< |f - 2(u^2+v^2)| + |g - 2(u^2-v^2)|
  double derivative_defect = 0.0;  ///< |g + f'/(2 lambda)|
  double turning_point_defect = 0.0;
  double residual_sup = 0.0;       ///< recomputed ODE residual
};

SolutionCheck check_solution(const TorusSolution& solution);

} // namespace syt
