#pragma once

#include "syt/fourier.hpp"
#include "syt/model_params.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace syt {

struct TorusSolution;

/// Truncated Fourier representation of a two-component spinor on the circle
/// of length 2 pi ell: psi_j(t) = sum_{|n| <= N} c_j[n + N] exp(i n t / ell).
struct FourierState {
  ModelParams params;
  int N = 0;
  Eigen::VectorXcd c1;
  Eigen::VectorXcd c2;

  static FourierState zero(const ModelParams& params, int N);

  int modes() const { return 2 * N + 1; }
  Complex& a(int n) { return c1[n + N]; }
  Complex& b(int n) { return c2[n + N]; }
  Complex a(int n) const { return c1[n + N]; }
  Complex b(int n) const { return c2[n + N]; }

  FourierState& operator+=(const FourierState& o);
  FourierState& operator-=(const FourierState& o);
  FourierState& operator*=(Complex s);
};

FourierState operator+(FourierState lhs, const FourierState& rhs);
FourierState operator-(FourierState lhs, const FourierState& rhs);
FourierState operator*(Complex s, FourierState x);

/// Mode-wise structure of the linear operator
/// A psi = (i psi1' + i lambda psi2, -i psi2' - i lambda psi1).
/// Mode n acts through M_n = [[-n/ell, i lambda], [-i lambda, n/ell]], whose
/// eigenvalues are +-omega_n with omega_n = sqrt((n/ell)^2 + lambda^2).
class SpectralSplit {
public:
  SpectralSplit(const ModelParams& params, int N);

  Eigen::Matrix2cd block(int n) const;
  double omega(int n) const;
  /// Columns are the unit eigenvectors for +omega_n and -omega_n.
  Eigen::Matrix2cd eigenvectors(int n) const;
  /// All 2(2N+1) eigenvalues in ascending order.
  std::vector<double> spectrum() const;
  /// min_n omega_n (equals lambda).
  double gap() const;

private:
  ModelParams params_;
  int N_;
};

/// Outcome of the fiberwise maximization over the negative subspace.
struct ReductionResult {
  FourierState w;
  int iterations = 0;
  double gradient_norm = 0.0;
};

/// One minimization run from a single starting direction.
struct StartOutcome {
  std::string origin; ///< "constant", "torus-k1" or "random-<i>"
  double energy = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct GalerkinResult {
  FourierState state;
  double energy = 0.0;
  double gradient_norm = 0.0;
  double nehari_residual = 0.0;
  int restarts_used = 0;
  std::vector<StartOutcome> starts;
};

struct GalerkinOptions {
  double gradient_tolerance = 1e-9;  ///< relative H-norm gradient at convergence
  double reduction_tolerance = 1e-11;
  int reduction_budget = 10000;
  int descent_budget = 4000;
  bool warm_start_constant = true;
  bool warm_start_torus = true;
};

/// Fourier-Galerkin discretization of the functional
/// L(psi) = 1/2 Re int (A psi, psi) - 1/4 int |psi|^4 on the circle of length
/// 2 pi ell, together with its reduction to the positive spectral subspace.
///
/// Products are evaluated on a 4(2N+1)-point grid, which integrates the
/// quartic term and projects the cubic term without aliasing.
class GalerkinModel {
public:
  GalerkinModel(const ModelParams& params, int N);

  const ModelParams& params() const { return params_; }
  int N() const { return N_; }
  int grid_size() const { return fft_.size(); }
  const SpectralSplit& spectral() const { return split_; }

  FourierState apply_operator(const FourierState& x) const;
  std::pair<FourierState, FourierState> split(const FourierState& x) const;
  FourierState project_plus(const FourierState& x) const;
  FourierState project_minus(const FourierState& x) const;
  /// |A|^power applied mode-wise (|M_n| = omega_n I).
  FourierState abs_power(const FourierState& x, double power) const;

  /// Re int (x, y) dt.
  double l2_inner(const FourierState& x, const FourierState& y) const;
  /// Re int (|A|^{1/2} x, |A|^{1/2} y) dt.
  double h_inner(const FourierState& x, const FourierState& y) const;
  double h_norm(const FourierState& x) const;

  double quartic(const FourierState& x) const;
  /// Coefficients of |psi|^2 psi for |n| <= N.
  FourierState cubic(const FourierState& x) const;
  double energy(const FourierState& x) const;
  /// L2 gradient G = A psi - |psi|^2 psi, so dL[h] = Re int (G, h) dt.
  FourierState gradient(const FourierState& x) const;
  double directional_derivative(const FourierState& x, const FourierState& h) const;
  /// ||grad L||_H / ||psi||_H using the H-Riesz representative |A|^{-1} G.
  double relative_gradient_norm(const FourierState& x) const;

  /// Maximizer w over the negative subspace of w -> L(u_plus + w). Inputs to
  /// this and the ray functions are projected onto the positive subspace first.
  ReductionResult reduction_map(const FourierState& u_plus,
                                const FourierState* warm_start = nullptr) const;
  /// I(t u) = L(t u + reduction_map(t u)).
  double ray_energy(const FourierState& u_plus, double t) const;
  /// The unique t > 0 maximizing I(t u). Throws BracketError when no interior
  /// maximum lies in [1e-6, 1e6].
  double nehari_scale(const FourierState& u_plus) const;

  /// Samples psi on n_grid >= 2N+1 uniform points of [0, 2 pi ell).
  std::pair<std::vector<Complex>, std::vector<Complex>> to_grid(const FourierState& x,
                                                                 int n_grid) const;
  /// Least-squares projection of uniformly sampled components onto |n| <= N.
  FourierState from_grid(const std::vector<Complex>& psi1, const std::vector<Complex>& psi2) const;

  /// Constant-length solution (sqrt(lambda)/2)(1 + i, 1 - i), exact in mode 0.
  FourierState constant_state() const;
  /// Positive part of a torus-solver spinor lifted at theta = 0.
  FourierState import_solution(const TorusSolution& solution) const;

  GalerkinResult minimize(int restarts, std::uint64_t seed, const GalerkinOptions& options = {}) const;

  /// Descent on the unit sphere of the positive subspace from one start.
  std::pair<FourierState, StartOutcome> descend(const FourierState& start,
                                                const GalerkinOptions& options) const;

  FourierState random_direction(std::uint64_t seed) const;

private:
  struct RayPoint {
    double t = 0.0;
    double slope = 0.0; ///< d/dt I(t u)
    FourierState w;
  };
  RayPoint ray_point(const FourierState& u, double t, const FourierState* warm,
                     const GalerkinOptions& options) const;
  std::pair<double, FourierState> ray_maximum(const FourierState& u, double t_guess,
                                              const FourierState* warm,
                                              const GalerkinOptions& options) const;
  ReductionResult reduce(const FourierState& u, const FourierState* warm, double tol,
                         int budget) const;
  void grid_of(const FourierState& x, std::vector<Complex>& p1, std::vector<Complex>& p2) const;
  FourierState coefficients_of(std::vector<Complex>& p1, std::vector<Complex>& p2) const;

  ModelParams params_;
  int N_;
  SpectralSplit split_;
  FourierTransform fft_;
  std::vector<double> omega_;
};

// Free-function front door mirroring the operation list.
FourierState apply_operator(const FourierState& state);
std::pair<FourierState, FourierState> split(const FourierState& state);
double energy(const FourierState& state);
FourierState reduction_map(const FourierState& u_plus);
double nehari_scale(const FourierState& u_plus);
GalerkinResult minimize(const ModelParams& params, int N, int restarts, std::uint64_t seed);

/// Gauge utilities for comparing states modulo the invariance group.
FourierState translate(const FourierState& x, double shift);
FourierState normalize_phase(const FourierState& x);
/// Density |psi1|^2 + |psi2|^2 sampled on n_grid points.
std::vector<double> density(const GalerkinModel& model, const FourierState& x, int n_grid);
/// Shift c maximizing the cross-correlation of the density of x(. + c) with
/// the sampled profile f on [0, 2 pi ell).
double best_translation(const GalerkinModel& model, const FourierState& x,
                        const std::vector<double>& profile);

} // namespace syt
