#include "syt/galerkin.hpp"

#include "syt/errors.hpp"
#include "syt/parallel.hpp"
#include "syt/torus_solver.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <random>
#include <tuple>

namespace syt {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRayMin = 1e-6;
constexpr double kRayMax = 1e6;

void require_same_shape(const FourierState& x, const FourierState& y) {
  if (x.N != y.N) throw DomainError("Fourier states with different truncation");
}

int slot(int n, int m) { return n >= 0 ? n : n + m; }

} // namespace

FourierState FourierState::zero(const ModelParams& params, int N) {
  if (N < 0) throw DomainError("truncation N must be non-negative");
  FourierState s;
  s.params = params;
  s.N = N;
  s.c1 = Eigen::VectorXcd::Zero(2 * N + 1);
  s.c2 = Eigen::VectorXcd::Zero(2 * N + 1);
  return s;
}

FourierState& FourierState::operator+=(const FourierState& o) {
  require_same_shape(*this, o);
  c1 += o.c1;
  c2 += o.c2;
  return *this;
}

FourierState& FourierState::operator-=(const FourierState& o) {
  require_same_shape(*this, o);
  c1 -= o.c1;
  c2 -= o.c2;
  return *this;
}

FourierState& FourierState::operator*=(Complex s) {
  c1 *= s;
  c2 *= s;
  return *this;
}

FourierState operator+(FourierState lhs, const FourierState& rhs) { return lhs += rhs; }
FourierState operator-(FourierState lhs, const FourierState& rhs) { return lhs -= rhs; }
FourierState operator*(Complex s, FourierState x) { return x *= s; }

// ---------------------------------------------------------------------------

SpectralSplit::SpectralSplit(const ModelParams& params, int N) : params_(params), N_(N) {
  params_.validate();
  if (N < 0) throw DomainError("truncation N must be non-negative");
}

Eigen::Matrix2cd SpectralSplit::block(int n) const {
  const double a = n / params_.ell;
  const Complex il(0.0, params_.lambda);
  Eigen::Matrix2cd m;
  m << -a, il, -il, a;
  return m;
}

double SpectralSplit::omega(int n) const { return std::hypot(n / params_.ell, params_.lambda); }

Eigen::Matrix2cd SpectralSplit::eigenvectors(int n) const {
  // M_n (lambda, -i(a + w))^T = w (...) and M_n (lambda, i(w - a))^T = -w (...)
  const double a = n / params_.ell;
  const double w = omega(n);
  const double lam = params_.lambda;
  Eigen::Matrix2cd v;
  v(0, 0) = lam;
  v(1, 0) = Complex(0.0, -(a + w));
  v(0, 1) = lam;
  v(1, 1) = Complex(0.0, w - a);
  v.col(0) /= v.col(0).norm();
  v.col(1) /= v.col(1).norm();
  return v;
}

std::vector<double> SpectralSplit::spectrum() const {
  std::vector<double> out;
  out.reserve(2 * (2 * N_ + 1));
  for (int n = -N_; n <= N_; ++n) {
    out.push_back(omega(n));
    out.push_back(-omega(n));
  }
  std::sort(out.begin(), out.end());
  return out;
}

double SpectralSplit::gap() const {
  double g = std::numeric_limits<double>::infinity();
  for (int n = -N_; n <= N_; ++n) g = std::min(g, omega(n));
  return g;
}

// ---------------------------------------------------------------------------

GalerkinModel::GalerkinModel(const ModelParams& params, int N)
    : params_(params), N_(N), split_(params, N), fft_(4 * (2 * N + 1)) {
  if (N < 1) throw DomainError("truncation N must be at least 1");
  omega_.resize(2 * N + 1);
  for (int n = -N; n <= N; ++n) omega_[n + N] = split_.omega(n);
}

FourierState GalerkinModel::apply_operator(const FourierState& x) const {
  FourierState y = FourierState::zero(params_, N_);
  const Complex il(0.0, params_.lambda);
  for (int n = -N_; n <= N_; ++n) {
    const double a = n / params_.ell;
    y.a(n) = -a * x.a(n) + il * x.b(n);
    y.b(n) = -il * x.a(n) + a * x.b(n);
  }
  return y;
}

FourierState GalerkinModel::project_plus(const FourierState& x) const {
  FourierState y = apply_operator(x);
  for (int n = -N_; n <= N_; ++n) {
    const double w = omega_[n + N_];
    y.a(n) = 0.5 * (x.a(n) + y.a(n) / w);
    y.b(n) = 0.5 * (x.b(n) + y.b(n) / w);
  }
  return y;
}

FourierState GalerkinModel::project_minus(const FourierState& x) const {
  FourierState y = apply_operator(x);
  for (int n = -N_; n <= N_; ++n) {
    const double w = omega_[n + N_];
    y.a(n) = 0.5 * (x.a(n) - y.a(n) / w);
    y.b(n) = 0.5 * (x.b(n) - y.b(n) / w);
  }
  return y;
}

std::pair<FourierState, FourierState> GalerkinModel::split(const FourierState& x) const {
  FourierState plus = project_plus(x);
  FourierState minus = x - plus;
  return {std::move(plus), std::move(minus)};
}

FourierState GalerkinModel::abs_power(const FourierState& x, double power) const {
  FourierState y = x;
  for (int i = 0; i < 2 * N_ + 1; ++i) {
    const double s = std::pow(omega_[i], power);
    y.c1[i] *= s;
    y.c2[i] *= s;
  }
  return y;
}

double GalerkinModel::l2_inner(const FourierState& x, const FourierState& y) const {
  return 2.0 * kPi * params_.ell * (x.c1.dot(y.c1) + x.c2.dot(y.c2)).real();
}

double GalerkinModel::h_inner(const FourierState& x, const FourierState& y) const {
  Complex s = 0.0;
  for (int i = 0; i < 2 * N_ + 1; ++i)
    s += omega_[i] * (std::conj(x.c1[i]) * y.c1[i] + std::conj(x.c2[i]) * y.c2[i]);
  return 2.0 * kPi * params_.ell * s.real();
}

double GalerkinModel::h_norm(const FourierState& x) const { return std::sqrt(h_inner(x, x)); }

void GalerkinModel::grid_of(const FourierState& x, std::vector<Complex>& p1,
                            std::vector<Complex>& p2) const {
  const int m = fft_.size();
  p1.assign(m, 0.0);
  p2.assign(m, 0.0);
  for (int n = -N_; n <= N_; ++n) {
    p1[slot(n, m)] = x.a(n);
    p2[slot(n, m)] = x.b(n);
  }
  fft_.backward(p1, p1);
  fft_.backward(p2, p2);
}

FourierState GalerkinModel::coefficients_of(std::vector<Complex>& p1, std::vector<Complex>& p2) const {
  const int m = fft_.size();
  fft_.forward(p1, p1);
  fft_.forward(p2, p2);
  FourierState y = FourierState::zero(params_, N_);
  for (int n = -N_; n <= N_; ++n) {
    y.a(n) = p1[slot(n, m)] / double(m);
    y.b(n) = p2[slot(n, m)] / double(m);
  }
  return y;
}

double GalerkinModel::quartic(const FourierState& x) const {
  std::vector<Complex> p1, p2;
  grid_of(x, p1, p2);
  double s = 0.0;
  for (std::size_t j = 0; j < p1.size(); ++j) {
    const double rho = std::norm(p1[j]) + std::norm(p2[j]);
    s += rho * rho;
  }
  return 2.0 * kPi * params_.ell * s / p1.size();
}

FourierState GalerkinModel::cubic(const FourierState& x) const {
  std::vector<Complex> p1, p2;
  grid_of(x, p1, p2);
  for (std::size_t j = 0; j < p1.size(); ++j) {
    const double rho = std::norm(p1[j]) + std::norm(p2[j]);
    p1[j] *= rho;
    p2[j] *= rho;
  }
  return coefficients_of(p1, p2);
}

double GalerkinModel::energy(const FourierState& x) const {
  return 0.5 * l2_inner(x, apply_operator(x)) - 0.25 * quartic(x);
}

FourierState GalerkinModel::gradient(const FourierState& x) const {
  return apply_operator(x) - cubic(x);
}

double GalerkinModel::directional_derivative(const FourierState& x, const FourierState& h) const {
  return l2_inner(gradient(x), h);
}

double GalerkinModel::relative_gradient_norm(const FourierState& x) const {
  const double scale = h_norm(x);
  if (scale == 0.0) return 0.0;
  return h_norm(abs_power(gradient(x), -1.0)) / scale;
}

// ---------------------------------------------------------------------------
// Reduction map: maximize Phi(w) = L(u + w) over the negative subspace. In the
// H inner product Phi has gradient -w - |A|^{-1} P_- N(u + w) and Hessian
// between -(1 + 3 max|psi|^2 / lambda) and -1, so a fixed step 2/(2 + c)
// with c the quartic curvature estimate contracts.

ReductionResult GalerkinModel::reduce(const FourierState& u, const FourierState* warm, double tol,
                                      int budget) const {
  ReductionResult r;
  r.w = warm ? project_minus(*warm) : FourierState::zero(params_, N_);
  std::vector<Complex> p1, p2;
  for (int it = 0;; ++it) {
    grid_of(u + r.w, p1, p2);
    double rho_max = 0.0;
    for (std::size_t j = 0; j < p1.size(); ++j) {
      const double rho = std::norm(p1[j]) + std::norm(p2[j]);
      rho_max = std::max(rho_max, rho);
      p1[j] *= rho;
      p2[j] *= rho;
    }
    const FourierState nl = abs_power(coefficients_of(p1, p2), -1.0);
    const FourierState forcing = project_minus(nl);
    FourierState g = -1.0 * (r.w + forcing);
    const double gnorm = h_norm(g);
    const double floor = 1e-14 * h_norm(nl);
    r.iterations = it;
    r.gradient_norm = gnorm;
    if (gnorm <= tol * h_norm(forcing) + floor) return r;
    if (it >= budget)
      throw ConvergenceError("reduction map did not converge within " + std::to_string(budget) +
                             " iterations");
    const double step = 2.0 / (2.0 + 3.0 * rho_max / params_.lambda);
    r.w += step * g;
  }
}

ReductionResult GalerkinModel::reduction_map(const FourierState& u_plus,
                                             const FourierState* warm_start) const {
  require_same_shape(u_plus, FourierState::zero(params_, N_));
  const GalerkinOptions opt;
  return reduce(project_plus(u_plus), warm_start, opt.reduction_tolerance, opt.reduction_budget);
}

double GalerkinModel::ray_energy(const FourierState& u_plus, double t) const {
  const FourierState u = t * project_plus(u_plus);
  const ReductionResult r = reduction_map(u);
  return energy(u + r.w);
}

GalerkinModel::RayPoint GalerkinModel::ray_point(const FourierState& u, double t,
                                                 const FourierState* warm,
                                                 const GalerkinOptions& options) const {
  RayPoint p;
  p.t = t;
  const FourierState tu = t * u;
  p.w = reduce(tu, warm, options.reduction_tolerance, options.reduction_budget).w;
  // d/dt L(t u + g(t u)) = dL[u] at the reduced point (the w-derivative vanishes).
  p.slope = t * h_inner(u, u) - l2_inner(cubic(tu + p.w), u);
  return p;
}

std::pair<double, FourierState> GalerkinModel::ray_maximum(const FourierState& u, double t_guess,
                                                           const FourierState* warm,
                                                           const GalerkinOptions& options) const {
  const double uu = h_inner(u, u);
  if (!(uu > 0.0)) throw DomainError("nehari_scale needs a nonzero positive-subspace direction");
  double t0 = t_guess;
  if (!(t0 > 0.0)) t0 = std::sqrt(uu / quartic(u));
  t0 = std::clamp(t0, kRayMin, kRayMax);

  // Evaluations share the latest reduced point as warm start, rescaled
  // cubically (g(t u) = O(t^3) for small t).
  RayPoint last = ray_point(u, t0, warm, options);
  RayPoint best = last;
  auto eval = [&](double t) {
    if (t != last.t) {
      const double s = t / last.t;
      const FourierState guess = (s * s * s) * last.w;
      last = ray_point(u, t, &guess, options);
      if (std::abs(last.slope) < std::abs(best.slope)) best = last;
    }
    return last.slope;
  };

  // Quartic model slope ~ t uu - t^3 b through the first evaluation gives
  // the initial estimate; the bracket then widens geometrically around it.
  double t1 = t0;
  const double b = (t0 * uu - last.slope) / (t0 * t0 * t0);
  if (b > 0.0) t1 = std::clamp(std::sqrt(uu / b), kRayMin, kRayMax);
  double s1 = eval(t1);
  double lo = t1, hi = t1, slo = s1, shi = s1;
  double step = 1e-3;
  if (s1 > 0.0) {
    for (;;) {
      if (lo >= kRayMax) throw BracketError("ray energy still increasing at t = 1e6");
      const double t = std::min(lo * (1.0 + step), kRayMax);
      const double s = eval(t);
      if (s <= 0.0) {
        hi = t;
        shi = s;
        break;
      }
      lo = t;
      slo = s;
      step *= std::numbers::phi * std::numbers::phi;
    }
  } else {
    for (;;) {
      if (hi <= kRayMin) throw BracketError("ray energy decreasing already at t = 1e-6");
      const double t = std::max(hi / (1.0 + step), kRayMin);
      const double s = eval(t);
      if (s > 0.0) {
        lo = t;
        slo = s;
        break;
      }
      hi = t;
      shi = s;
      step *= std::numbers::phi * std::numbers::phi;
    }
  }
  if (shi == 0.0) return {best.t, std::move(best.w)};

  std::uintmax_t max_iter = 200;
  const auto stop = [&](double a, double c) {
    return std::abs(c - a) <= 1e-13 * c || std::abs(last.slope) <= 1e-11 * last.t * uu;
  };
  boost::math::tools::toms748_solve(eval, lo, hi, slo, shi, stop, max_iter);
  if (max_iter >= 200) throw ConvergenceError("ray maximization did not converge");
  return {best.t, std::move(best.w)};
}

double GalerkinModel::nehari_scale(const FourierState& u_plus) const {
  return ray_maximum(project_plus(u_plus), 0.0, nullptr, GalerkinOptions{}).first;
}

// ---------------------------------------------------------------------------

std::pair<std::vector<Complex>, std::vector<Complex>> GalerkinModel::to_grid(const FourierState& x,
                                                                             int n_grid) const {
  if (n_grid < 2 * N_ + 1) throw DomainError("grid too coarse for the truncation");
  FourierTransform fft(n_grid);
  std::vector<Complex> p1(n_grid, 0.0), p2(n_grid, 0.0);
  for (int n = -N_; n <= N_; ++n) {
    p1[slot(n, n_grid)] = x.a(n);
    p2[slot(n, n_grid)] = x.b(n);
  }
  fft.backward(p1, p1);
  fft.backward(p2, p2);
  return {std::move(p1), std::move(p2)};
}

FourierState GalerkinModel::from_grid(const std::vector<Complex>& psi1,
                                      const std::vector<Complex>& psi2) const {
  const int m = static_cast<int>(psi1.size());
  if (m != static_cast<int>(psi2.size())) throw DomainError("component grids differ in size");
  if (m < 2 * N_ + 1) throw DomainError("grid too coarse for the truncation");
  FourierTransform fft(m);
  std::vector<Complex> p1(m), p2(m);
  fft.forward(psi1, p1);
  fft.forward(psi2, p2);
  FourierState y = FourierState::zero(params_, N_);
  for (int n = -N_; n <= N_; ++n) {
    y.a(n) = p1[slot(n, m)] / double(m);
    y.b(n) = p2[slot(n, m)] / double(m);
  }
  return y;
}

FourierState GalerkinModel::constant_state() const {
  FourierState s = FourierState::zero(params_, N_);
  const double h = 0.5 * std::sqrt(params_.lambda);
  s.a(0) = Complex(h, h);
  s.b(0) = Complex(h, -h);
  return s;
}

FourierState GalerkinModel::import_solution(const TorusSolution& solution) const {
  if (solution.params.lambda != params_.lambda || solution.params.ell != params_.ell)
    throw DomainError("imported solution belongs to different parameters");
  const SpinorField field = spinor_lift(solution, 0.0);
  return project_plus(from_grid(field.psi1, field.psi2));
}

FourierState GalerkinModel::random_direction(std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  FourierState s = FourierState::zero(params_, N_);
  for (int n = -N_; n <= N_; ++n) {
    const double amp = 1.0 / ((1.0 + std::abs(n)) * (1.0 + std::abs(n)));
    const double x1 = normal(rng), y1 = normal(rng), x2 = normal(rng), y2 = normal(rng);
    s.a(n) = amp * Complex(x1, y1);
    s.b(n) = amp * Complex(x2, y2);
  }
  s = project_plus(s);
  return (1.0 / h_norm(s)) * s;
}

// ---------------------------------------------------------------------------
// Outer minimization of J(v) = max_t I(t v) over the unit H-sphere of the
// positive subspace. dJ[h] = t* <P_+ |A|^{-1} grad L(psi*), h>_H.

std::pair<FourierState, StartOutcome> GalerkinModel::descend(const FourierState& start,
                                                             const GalerkinOptions& options) const {
  StartOutcome out;
  FourierState v = project_plus(start);
  const double n0 = h_norm(v);
  if (!(n0 > 0.0)) throw DomainError("start direction has no positive part");
  v *= 1.0 / n0;

  auto [t, w] = ray_maximum(v, 0.0, nullptr, options);
  FourierState psi = t * v + w;
  double J = energy(psi);
  FourierState riesz = abs_power(gradient(psi), -1.0);
  double rel = h_norm(riesz) / h_norm(psi);
  double alpha = 0.5 / (t * t);

  for (int it = 0;; ++it) {
    out.iterations = it;
    out.energy = J;
    out.gradient_norm = rel;
    if (rel <= options.gradient_tolerance) {
      out.converged = true;
      break;
    }
    if (it >= options.descent_budget) break;

    FourierState dir = project_plus(riesz);
    dir -= h_inner(dir, v) * v;
    dir *= t;
    const double slope = h_inner(dir, dir);

    bool accepted = false;
    for (int ls = 0; ls < 60 && !accepted; ++ls) {
      FourierState trial = v - alpha * dir;
      trial *= 1.0 / h_norm(trial);
      auto [tt, tw] = ray_maximum(trial, t, &w, options);
      FourierState tpsi = tt * trial + tw;
      const double tJ = energy(tpsi);
      FourierState triesz = abs_power(gradient(tpsi), -1.0);
      const double trel = h_norm(triesz) / h_norm(tpsi);
      // Once the predicted decrease is below what J resolves in double
      // precision, the gradient norm is the only usable merit function.
      const bool resolved = alpha * slope > 1e-9 * std::abs(J);
      const bool ok = resolved ? tJ <= J - 1e-4 * alpha * slope : trel < rel;
      if (ok) {
        v = std::move(trial);
        t = tt;
        w = std::move(tw);
        psi = std::move(tpsi);
        riesz = std::move(triesz);
        J = tJ;
        rel = trel;
        accepted = true;
        alpha *= 1.5;
      } else {
        alpha *= 0.5;
      }
    }
    if (!accepted) break;
  }
  return {std::move(psi), std::move(out)};
}

GalerkinResult GalerkinModel::minimize(int restarts, std::uint64_t seed,
                                       const GalerkinOptions& options) const {
  if (N_ < 16) throw DomainError("minimize needs N >= 16");
  if (restarts < 1) throw DomainError("minimize needs at least one restart");

  struct Start {
    std::string origin;
    FourierState direction;
  };
  std::vector<Start> starts;
  if (options.warm_start_constant) starts.push_back({"constant", constant_state()});
  if (options.warm_start_torus && params_.ell > 1.0 / (2.0 * params_.lambda)) {
    try {
      const BranchSolve b = solve_K(params_, kPi * params_.ell);
      if (!b.underflow) {
        int n_grid = 1024;
        while (n_grid < 4 * (2 * N_ + 1)) n_grid *= 2;
        starts.push_back({"torus-k1", import_solution(reconstruct(params_, b.K, 1, n_grid))});
      }
    } catch (const Error&) {
      // No usable k = 1 profile; the random starts still cover the sphere.
    }
  }
  for (int i = 0; i < restarts; ++i) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(i)};
    std::uint64_t s = 0;
    std::array<std::uint32_t, 2> words{};
    seq.generate(words.begin(), words.end());
    s = (std::uint64_t(words[0]) << 32) | words[1];
    starts.push_back({"random-" + std::to_string(i), random_direction(s)});
  }

  std::vector<std::pair<FourierState, StartOutcome>> runs(starts.size());
  parallel_for(starts.size(), [&](std::size_t i) {
    try {
      runs[i] = descend(starts[i].direction, options);
    } catch (const Error&) {
      runs[i].first = FourierState::zero(params_, N_);
      runs[i].second.converged = false;
      runs[i].second.energy = std::numeric_limits<double>::quiet_NaN();
      runs[i].second.gradient_norm = std::numeric_limits<double>::quiet_NaN();
    }
    runs[i].second.origin = starts[i].origin;
  });

  GalerkinResult result;
  result.restarts_used = static_cast<int>(starts.size());
  int best = -1;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    result.starts.push_back(runs[i].second);
    if (!runs[i].second.converged) continue;
    if (best < 0 || runs[i].second.energy < runs[best].second.energy) best = static_cast<int>(i);
  }
  if (best < 0) throw ConvergenceError("no Galerkin start converged");

  result.state = runs[best].first;
  result.energy = runs[best].second.energy;
  result.gradient_norm = runs[best].second.gradient_norm;
  const FourierState u = project_plus(result.state);
  result.nehari_residual = std::abs(h_inner(u, u) - l2_inner(cubic(result.state), u));
  return result;
}

// ---------------------------------------------------------------------------

namespace {

const GalerkinModel& cached_model(const ModelParams& params, int N) {
  static std::mutex mutex;
  static std::map<std::tuple<double, double, int>, std::unique_ptr<GalerkinModel>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{params.lambda, params.ell, N}];
  if (!slot) slot = std::make_unique<GalerkinModel>(params, N);
  return *slot;
}

} // namespace

FourierState apply_operator(const FourierState& state) {
  return cached_model(state.params, state.N).apply_operator(state);
}

std::pair<FourierState, FourierState> split(const FourierState& state) {
  return cached_model(state.params, state.N).split(state);
}

double energy(const FourierState& state) { return cached_model(state.params, state.N).energy(state); }

FourierState reduction_map(const FourierState& u_plus) {
  return cached_model(u_plus.params, u_plus.N).reduction_map(u_plus).w;
}

double nehari_scale(const FourierState& u_plus) {
  return cached_model(u_plus.params, u_plus.N).nehari_scale(u_plus);
}

GalerkinResult minimize(const ModelParams& params, int N, int restarts, std::uint64_t seed) {
  return GalerkinModel(params, N).minimize(restarts, seed);
}

FourierState translate(const FourierState& x, double shift) {
  FourierState y = x;
  for (int n = -x.N; n <= x.N; ++n) {
    const Complex e = std::polar(1.0, n * shift / x.params.ell);
    y.a(n) *= e;
    y.b(n) *= e;
  }
  return y;
}

FourierState normalize_phase(const FourierState& x) {
  Complex pivot = 0.0;
  for (int i = 0; i < x.modes(); ++i) {
    if (std::abs(x.c1[i]) > std::abs(pivot)) pivot = x.c1[i];
    if (std::abs(x.c2[i]) > std::abs(pivot)) pivot = x.c2[i];
  }
  if (pivot == 0.0) return x;
  return (std::conj(pivot) / std::abs(pivot)) * x;
}

std::vector<double> density(const GalerkinModel& model, const FourierState& x, int n_grid) {
  auto [p1, p2] = model.to_grid(x, n_grid);
  std::vector<double> rho(n_grid);
  for (int j = 0; j < n_grid; ++j) rho[j] = std::norm(p1[j]) + std::norm(p2[j]);
  return rho;
}

double best_translation(const GalerkinModel& model, const FourierState& x,
                        const std::vector<double>& profile) {
  const int N = model.N();
  const int m = model.grid_size();
  const int p = static_cast<int>(profile.size());
  if (p < 4) throw DomainError("profile needs at least four samples");

  std::vector<double> rho = density(model, x, m);
  std::vector<Complex> rh(rho.begin(), rho.end()), fh(profile.begin(), profile.end());
  FourierTransform(m).forward(rh, rh);
  FourierTransform(p).forward(fh, fh);
  const int top = std::min(2 * N, (p - 1) / 2);
  std::vector<Complex> weight(top + 1);
  for (int n = 0; n <= top; ++n)
    weight[n] = (rh[n] / double(m)) * std::conj(fh[n] / double(p));

  const double ell = model.params().ell;
  const double period = 2.0 * kPi * ell;
  // C(c) = (1 / period) int rho(t + c) f(t) dt, real-valued.
  auto corr = [&](double c) {
    double s = weight[0].real();
    for (int n = 1; n <= top; ++n) s += 2.0 * (weight[n] * std::polar(1.0, n * c / ell)).real();
    return s;
  };
  const int coarse = std::max(256, 8 * top);
  double best_c = 0.0, best_v = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < coarse; ++j) {
    const double c = period * j / coarse;
    const double val = corr(c);
    if (val > best_v) {
      best_v = val;
      best_c = c;
    }
  }
  const double h = period / coarse;
  const auto r = boost::math::tools::brent_find_minima([&](double c) { return -corr(c); },
                                                       best_c - h, best_c + h, 52);
  double c = std::fmod(r.first, period);
  if (c < 0.0) c += period;
  return c;
}

} // namespace syt
