#include "syt/torus_solver.hpp"

#include "syt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace syt {

namespace {

constexpr double kPi = std::numbers::pi;

// Smallest K (in units of lambda) at which the half-period is still evaluated
// by quadrature; beyond it the logarithmic tail eta ~ ln(8 lambda / K)/(2 lambda)
// takes over.
constexpr double kUnderflowFloor = 1e-300;

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void require_k_closed_range(const ModelParams& params, double K) {
  if (!(K > 0.0 && K <= params.k_max())) {
    std::ostringstream os;
    os << "K outside (0, lambda/2]: K = " << K << ", lambda/2 = " << params.k_max();
    throw DomainError(os.str());
  }
}

double angle_singular_scale(const Roots& r) {
  const double width = r.s1 - r.s0;
  return width > 0.0 ? std::asinh(std::sqrt(2.0 * r.s0 / width)) : 0.0;
}

// theta in [0, pi/2] with eta_to_angle(theta) = tau, by Newton on the smooth,
// strictly increasing angle form safeguarded by bisection.
double invert_angle(const ModelParams& params, double K, const Roots& r, double tau,
                    double half) {
  constexpr double right = 0.5 * kPi;
  if (tau <= 0.0) return 0.0;
  if (tau >= half) return right;
  const double quad_tol = 1e-15 * std::max(1.0, half);
  double lo = 0.0;
  double hi = right;
  double theta = right * tau / half;
  for (int it = 0; it < 200; ++it) {
    const double h = eta_to_angle(params, K, theta, quad_tol).value - tau;
    if (h > 0.0)
      hi = theta;
    else
      lo = theta;
    double next = theta - h / eta_angle_derivative(r, theta);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - theta);
    theta = next;
    if (step <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(theta, 1e-300) ||
        hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi)
      break;
  }
  return theta;
}

std::vector<double> uniform_grid(const ModelParams& params, int n) {
  std::vector<double> t(static_cast<std::size_t>(n));
  const double h = 2.0 * kPi * params.ell / n;
  for (int j = 0; j < n; ++j) t[j] = h * j;
  return t;
}

void require_grid(int n_grid) {
  if (n_grid < 64 || !is_power_of_two(n_grid))
    throw DomainError("grid size must be a power of two >= 64, got " + std::to_string(n_grid));
}

} // namespace

BranchSolve solve_K(const ModelParams& params, double half_period_target) {
  params.validate();
  const double floor = params.half_period_floor();
  if (!(half_period_target > floor)) {
    std::ostringstream os;
    os.precision(17);
    os << "no non-constant branch: half-period " << half_period_target
       << " does not exceed pi/(2 lambda) = " << floor;
    throw NoBranchError(os.str());
  }
  const double lambda = params.lambda;
  const double tol = 1e-10 * std::max(1.0, half_period_target);
  // Bisect well past the contract so downstream volumes inherit little of it.
  const double goal = 1e-3 * tol;
  const double quad_tol = 1e-2 * goal;

  // Degenerate end: eta is linear in K there, eta ~ floor (1 + (1 - 2K/lambda)/4).
  const double k_hi = std::nextafter(params.k_max() - kDegenerateGap * lambda, 0.0);
  const PeriodResult top = half_period(params, k_hi, quad_tol);
  if (half_period_target <= top.eta) {
    const double excess = half_period_target / floor - 1.0;
    const double K = std::clamp(params.k_max() * (1.0 - 4.0 * excess), k_hi, params.k_max());
    return BranchSolve{K, std::log(K), std::abs(top.eta - half_period_target) + top.err, false};
  }

  const double k_lo = kUnderflowFloor * lambda;
  const PeriodResult bottom = half_period(params, k_lo, quad_tol);
  if (half_period_target >= bottom.eta) {
    const double log_K = std::log(k_lo) - 2.0 * lambda * (half_period_target - bottom.eta);
    return BranchSolve{std::exp(log_K), log_K, bottom.err + 1e-290, true};
  }

  double x_lo = std::log(k_lo);
  double x_hi = std::log(k_hi);
  BranchSolve best{k_hi, x_hi, std::numeric_limits<double>::infinity(), false};
  for (int it = 0; it < 400; ++it) {
    const double x = 0.5 * (x_lo + x_hi);
    const double K = std::exp(x);
    const PeriodResult p = half_period(params, K, quad_tol);
    const double diff = p.eta - half_period_target;
    const double err = std::abs(diff) + p.err;
    if (err < best.err) best = BranchSolve{K, x, err, false};
    if (err <= goal) break;
    if (diff > 0.0)
      x_lo = x;
    else
      x_hi = x;
    if (x_hi - x_lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(x)) break;
  }
  if (!(best.err <= tol)) {
    std::ostringstream os;
    os << "solve_K: could not reach |eta - target| <= " << tol << " (best " << best.err << ")";
    throw ToleranceError(os.str());
  }
  return best;
}

double volume(const ModelParams& params, double K, int k) {
  params.validate();
  require_k_closed_range(params, K);
  if (K == params.k_max()) return params.constant_volume();
  if (k < 1) throw DomainError("winding number must be positive for K < lambda/2");
  if (is_degenerate(params, K)) return 2.0 * kPi * kPi * params.lambda * k;
  const Roots r = roots(params, K);
  auto integrand = [&r](double theta) {
    const double s = profile_at_angle(r, theta);
    return s * s / std::sqrt((s + r.s0) * (s + r.s1));
  };
  const QuadratureResult q =
      integrate_graded(integrand, 0.0, 0.5 * kPi, angle_singular_scale(r), 1e-15 * params.lambda);
  return 8.0 * kPi * k * q.value;
}

double volume_gap(const ModelParams& params, double K, int k) {
  params.validate();
  require_k_closed_range(params, K);
  const double lambda = params.lambda;
  if (K == params.k_max()) return 8.0 * kPi * lambda * std::max(k, 1) - params.constant_volume();
  if (k < 1) throw DomainError("winding number must be positive for K < lambda/2");
  if (is_degenerate(params, K)) return 8.0 * kPi * lambda * k - 2.0 * kPi * kPi * lambda * k;
  const Roots r = roots(params, K);
  // 2 lambda - int_0^{pi/2} sqrt(s1^2 sin^2 + s0^2 cos^2) dphi, rationalized so
  // the integrand carries the factor s0 explicitly.
  auto integrand = [&r, lambda](double phi) {
    const double sn = std::sin(phi);
    const double cs = std::cos(phi);
    const double root = std::sqrt(r.s1 * r.s1 * sn * sn + r.s0 * r.s0 * cs * cs);
    return r.s0 * ((2.0 * lambda + r.s1) * sn * sn - r.s0 * cs * cs) / (2.0 * lambda * sn + root);
  };
  const double scale = std::atanh(std::min(r.s0 / r.s1, 1.0 - 1e-16));
  const QuadratureResult q = integrate_graded(integrand, 0.0, 0.5 * kPi, scale,
                                              1e-15 * std::max(r.s0, 1e-300));
  return 4.0 * kPi * k * q.value;
}

TorusSolution constant_solution(const ModelParams& params, int n_grid) {
  params.validate();
  require_grid(n_grid);
  TorusSolution sol;
  sol.params = params;
  sol.K = params.k_max();
  sol.k = 0;
  sol.t = uniform_grid(params, n_grid);
  const std::size_t n = sol.t.size();
  const double amp = 0.5 * std::sqrt(params.lambda);
  sol.f.assign(n, params.lambda);
  sol.g.assign(n, 0.0);
  sol.u.assign(n, amp);
  sol.v.assign(n, amp);
  sol.volume = params.constant_volume();
  sol.residual_sup = reduced_residual(params, sol.u, sol.v);
  return sol;
}

TorusSolution reconstruct(const ModelParams& params, double K, int k, int n_grid) {
  params.validate();
  require_k_closed_range(params, K);
  require_grid(n_grid);
  if (is_degenerate(params, K)) return constant_solution(params, n_grid);
  if (k < 1) throw DomainError("winding number must be positive for K < lambda/2");

  const PeriodResult period = half_period(params, K, 1e-14);
  const double full_period = 2.0 * period.eta;
  const double circumference = 2.0 * kPi * params.ell;
  if (std::abs(k * full_period - circumference) > 1e-7 * circumference) {
    std::ostringstream os;
    os.precision(17);
    os << "period mismatch: k * 2 eta_K(s1) = " << k * full_period
       << " but the circle has length " << circumference;
    throw DomainError(os.str());
  }

  const Roots r{period.s0, period.s1};
  const double lambda = params.lambda;
  TorusSolution sol;
  sol.params = params;
  sol.K = K;
  sol.k = k;
  sol.t = uniform_grid(params, n_grid);
  const std::size_t n = sol.t.size();
  sol.f.resize(n);
  sol.g.resize(n);
  sol.u.resize(n);
  sol.v.resize(n);
  // Phase of sample j inside its fundamental period of length circumference/k.
  const double h = circumference / n_grid;
  for (std::size_t j = 0; j < n; ++j) {
    double tau = std::fmod(static_cast<double>(j) * h * k, circumference) / k;
    const bool rising = tau <= period.eta;
    if (!rising) tau = full_period - tau;
    const double theta = invert_angle(params, K, r, tau, period.eta);
    const double f = profile_at_angle(r, theta);
    const double q = (f + r.s0) * (f + r.s1);
    // g = -f'/(2 lambda); on the rising half f' > 0.
    const double g_abs = (r.s1 - r.s0) * std::abs(std::sin(2.0 * theta)) * std::sqrt(q) / (4.0 * lambda);
    const double g = rising ? -g_abs : g_abs;
    const double uv = (f * f / (2.0 * lambda) + K) / 4.0;
    double u, v;
    if (g >= 0.0) {
      u = std::sqrt((f + g) / 4.0);
      v = uv / u;
    } else {
      v = std::sqrt((f - g) / 4.0);
      u = uv / v;
    }
    sol.f[j] = f;
    sol.g[j] = g;
    sol.u[j] = u;
    sol.v[j] = v;
  }
  sol.volume = volume(params, K, k);
  sol.residual_sup = reduced_residual(params, sol.u, sol.v);
  if (!(sol.residual_sup <= kResidualBudget)) {
    std::ostringstream os;
    os << "ODE residual " << sol.residual_sup << " exceeds budget " << kResidualBudget
       << "; increase the grid size";
    throw ToleranceError(os.str());
  }
  return sol;
}

SpinorField spinor_lift(const TorusSolution& solution, double theta) {
  SpinorField field;
  field.solution = solution;
  field.theta = theta;
  const Complex phase = std::polar(1.0, theta);
  const std::size_t n = solution.u.size();
  field.psi1.resize(n);
  field.psi2.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    field.psi1[j] = Complex(solution.u[j], solution.v[j]) * phase;
    field.psi2[j] = Complex(solution.u[j], -solution.v[j]) * phase;
  }
  return field;
}

double reduced_residual(const ModelParams& params, const std::vector<double>& u,
                        const std::vector<double>& v) {
  const double period = 2.0 * kPi * params.ell;
  const auto du = spectral_derivative(u, period);
  const auto dv = spectral_derivative(v, period);
  const double lambda = params.lambda;
  double sup = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double f = 2.0 * (u[j] * u[j] + v[j] * v[j]);
    const double r1 = du[j] + lambda * u[j] - f * v[j];
    const double r2 = -dv[j] + lambda * v[j] - f * u[j];
    sup = std::max({sup, std::abs(r1), std::abs(r2)});
  }
  return sup;
}

double spinor_residual(const SpinorField& field) {
  const ModelParams& params = field.solution.params;
  const double period = 2.0 * kPi * params.ell;
  const auto d1 = spectral_derivative(std::span<const Complex>(field.psi1), period);
  const auto d2 = spectral_derivative(std::span<const Complex>(field.psi2), period);
  const Complex i(0.0, 1.0);
  const double lambda = params.lambda;
  double sup = 0.0;
  for (std::size_t j = 0; j < field.psi1.size(); ++j) {
    const double rho = std::norm(field.psi1[j]) + std::norm(field.psi2[j]);
    const Complex r1 = i * d1[j] + i * lambda * field.psi2[j] - rho * field.psi1[j];
    const Complex r2 = -i * d2[j] - i * lambda * field.psi1[j] - rho * field.psi2[j];
    sup = std::max({sup, std::abs(r1), std::abs(r2)});
  }
  return sup;
}

double first_integral_defect(const TorusSolution& solution) {
  double sup = 0.0;
  for (std::size_t j = 0; j < solution.f.size(); ++j) {
    const double fk = f_kernel(solution.params, solution.K, solution.f[j]);
    sup = std::max(sup, std::abs(solution.g[j] * solution.g[j] - fk));
  }
  return sup;
}

SolutionCheck check_solution(const TorusSolution& sol) {
  SolutionCheck c;
  auto fail = [&c](std::string what) {
    c.ok = false;
    c.failures.push_back(std::move(what));
  };
  try {
    sol.params.validate();
  } catch (const Error& e) {
    fail(e.what());
    return c;
  }
  const std::size_t n = sol.t.size();
  if (n < 64 || sol.f.size() != n || sol.g.size() != n || sol.u.size() != n || sol.v.size() != n) {
    fail("sample arrays missing or of unequal length");
    return c;
  }
  if (!(sol.K > 0.0 && sol.K <= sol.params.k_max())) {
    fail("K outside (0, lambda/2]");
    return c;
  }
  const double lambda = sol.params.lambda;
  const Roots r = roots(sol.params, sol.K);
  const double scale = r.s1;

  for (std::size_t j = 0; j < n; ++j) {
    c.range_excess = std::max({c.range_excess, r.s0 - sol.f[j], sol.f[j] - r.s1});
    const double uu = sol.u[j] * sol.u[j];
    const double vv = sol.v[j] * sol.v[j];
    c.component_defect = std::max(c.component_defect, std::abs(sol.f[j] - 2.0 * (uu + vv)) +
                                                          std::abs(sol.g[j] - 2.0 * (uu - vv)));
    if (!(sol.u[j] > 0.0 && sol.v[j] > 0.0)) fail("u and v must stay positive");
  }
  if (c.range_excess > 1e-12 * scale) fail("f leaves [s0, s1]");
  c.first_integral = first_integral_defect(sol);
  if (c.first_integral > 1e-8 * scale * scale) fail("first integral g^2 = F_K(f) violated");
  if (c.component_defect > 1e-12 * scale) fail("f, g inconsistent with u, v");

  const auto df = spectral_derivative(sol.f, 2.0 * kPi * sol.params.ell);
  for (std::size_t j = 0; j < n; ++j)
    c.derivative_defect = std::max(c.derivative_defect, std::abs(sol.g[j] + df[j] / (2.0 * lambda)));
  if (c.derivative_defect > 1e-6 * scale) fail("g differs from -f'/(2 lambda)");

  if (sol.is_constant()) {
    const double amp = 0.5 * std::sqrt(lambda);
    for (std::size_t j = 0; j < n; ++j)
      c.turning_point_defect =
          std::max({c.turning_point_defect, std::abs(sol.f[j] - lambda), std::abs(sol.g[j]),
                    std::abs(sol.u[j] - amp), std::abs(sol.v[j] - amp)});
    if (c.turning_point_defect > 1e-12 * scale) fail("constant branch profiles are not constant");
  } else if (static_cast<int>(n) % (2 * sol.k) == 0) {
    // Turning points fall on grid nodes: minima at multiples of n/k, maxima halfway.
    const std::size_t per = n / static_cast<std::size_t>(sol.k);
    for (std::size_t p = 0; p < static_cast<std::size_t>(sol.k); ++p) {
      c.turning_point_defect = std::max({c.turning_point_defect, std::abs(sol.f[p * per] - r.s0),
                                         std::abs(sol.f[p * per + per / 2] - r.s1)});
    }
    if (c.turning_point_defect > 1e-8) fail("f does not reach s0 and s1 on each period");
  }

  c.residual_sup = reduced_residual(sol.params, sol.u, sol.v);
  if (c.residual_sup > kResidualBudget) fail("ODE residual above budget");
  if (std::abs(c.residual_sup - sol.residual_sup) > 1e-12 + 1e-6 * sol.residual_sup)
    fail("stored residual_sup does not match the recomputed residual");
  return c;
}

} // namespace syt
