#include "syt/acceptance.hpp"

#include "syt/bifurcation_atlas.hpp"
#include "syt/errors.hpp"
#include "syt/galerkin.hpp"
#include "syt/period_kernel.hpp"
#include "syt/torus_solver.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace syt {

namespace {

constexpr double kPi = std::numbers::pi;

struct Criterion {
  int id;
  const char* key;
  const char* title;
  std::function<void(CriterionResult&, const std::function<double(double)>&)> run;
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

void set_error(CriterionResult& r, double measured, double tol) {
  r.measured = measured;
  r.tolerance = tol;
  r.margin_type = false;
  r.passed = measured <= tol;
}

void set_margin(CriterionResult& r, double margin) {
  r.measured = margin;
  r.tolerance = 0.0;
  r.margin_type = true;
  r.passed = margin > 0.0;
}

// --- 1 ---------------------------------------------------------------------
void degenerate_period(CriterionResult& r, const std::function<double(double)>& tol) {
  double worst = 0.0;
  for (double lam : {0.5, 1.0, 2.0}) {
    const ModelParams p = ModelParams::make(lam, 1.0);
    const double K = lam / 2.0 - 1e-10;
    const double e = eta(p, K, roots(p, K).s1).value;
    worst = std::max(worst, std::abs(e - kPi / (2.0 * lam)));
  }
  set_error(r, worst, tol(1e-6));
  r.detail = "max |eta - pi/(2 lambda)| over lambda in {0.5, 1, 2}";
}

// --- 2 ---------------------------------------------------------------------
void monotonicity(CriterionResult& r, const std::function<double(double)>&) {
  double worst = std::numeric_limits<double>::infinity();
  for (double lam : {0.5, 1.0, 2.0}) {
    const ModelParams p = ModelParams::make(lam, 1.0);
    std::vector<PeriodResult> pts;
    for (int i = 1; i <= 50; ++i) pts.push_back(half_period(p, 0.5 * lam * i / 51.0));
    for (std::size_t i = 1; i < pts.size(); ++i) {
      const double margin = pts[i - 1].eta - pts[i].eta - pts[i - 1].err - pts[i].err;
      worst = std::min(worst, margin);
    }
  }
  set_margin(r, worst);
  r.detail = "smallest eta(K_i) - eta(K_{i+1}) net of quadrature error, 50-point grids";
}

// --- 3 ---------------------------------------------------------------------
void branch_count_check(CriterionResult& r, const std::function<double(double)>&) {
  struct Case {
    double lambda, ell;
    std::size_t expected;
  };
  const Case cases[] = {{1.0, 0.4, 1}, {1.0, 0.6, 2}, {1.0, 1.6, 4}, {0.5, 2.0, 2}, {0.5, 4.0, 5}};
  int mismatches = 0;
  std::ostringstream os;
  for (const auto& c : cases) {
    const BifurcationDiagram d = enumerate(ModelParams::make(c.lambda, c.ell));
    if (d.branches.size() != c.expected) {
      ++mismatches;
      os << "(" << c.lambda << ", " << c.ell << "): expected " << c.expected << " got " << d.branches.size()
         << "; ";
    }
  }
  set_error(r, mismatches, 0.0);
  r.detail = mismatches ? os.str() + "counts follow d/(2 lambda) < ell <= (d+1)/(2 lambda)"
                        : "all five branch counts reproduced";
}

// --- 4 ---------------------------------------------------------------------
void constant_volume(CriterionResult& r, const std::function<double(double)>& tol) {
  std::mt19937_64 rng(20240531);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double lam = std::exp(std::log(0.1) + unit(rng) * std::log(100.0));
    const double ell = std::exp(std::log(0.05) + unit(rng) * std::log(400.0));
    const ModelParams p = ModelParams::make(lam, ell);
    const double closed = 4.0 * kPi * kPi * lam * lam * ell;
    const TorusSolution c = constant_solution(p, 64);
    std::vector<double> f2(c.f.size());
    for (std::size_t j = 0; j < f2.size(); ++j) f2[j] = c.f[j] * c.f[j];
    const double grid = 2.0 * kPi * periodic_integral(f2, 2.0 * kPi * ell);
    const double lib = volume(p, p.k_max(), 0);
    worst = std::max({worst, std::abs(grid - closed) / closed, std::abs(lib - closed) / closed,
                      std::abs(c.volume - closed) / closed});
  }
  set_error(r, worst, tol(1e-12));
  r.detail = "max relative deviation from 4 pi^2 lambda^2 ell, 20 random (lambda, ell)";
}

// --- 5 ---------------------------------------------------------------------
void bounds(CriterionResult& r, const std::function<double(double)>&) {
  double worst = std::numeric_limits<double>::infinity();
  int pairs = 0;
  std::string failing;
  for (double lam : {0.5, 1.0, 2.0}) {
    for (double factor : {1.0001, 1.05, 1.2, 1.5, 2.0, 3.0, 5.0, 8.0, 15.0, 40.0}) {
      const ModelParams p = ModelParams::make(lam, factor / (2.0 * lam));
      BifurcationDiagram d = enumerate(p);
      try {
        const BoundReport rep = check_bounds(d);
        for (const auto& c : rep.checks) {
          const double rel = c.margin / rep.volume;
          if (rel < worst) {
            worst = rel;
            failing = c.inequality;
          }
        }
      } catch (const BoundViolation& e) {
        worst = std::min(worst, e.margin());
        failing = e.inequality();
      }
      ++pairs;
    }
  }
  set_margin(r, worst);
  r.detail = std::to_string(pairs) + " pairs; tightest: " + failing + " (margin relative to Vol1)";
}

// --- 6 ---------------------------------------------------------------------
void volume_limit(CriterionResult& r, const std::function<double(double)>& tol) {
  const ModelParams p = ModelParams::make(1.0, 1.0);
  const double err = std::abs(volume(p, 1e-8, 1) - 8.0 * kPi);
  const std::vector<SweepRow> rows = volume_sweep(p, {0.6, 1.0, 2.0, 5.0, 20.0, 1e4});
  const bool increasing = sweep_is_increasing(rows);
  const bool bounded = std::all_of(rows.begin(), rows.end(), [](const SweepRow& s) { return s.gap >= 0.0; });
  set_error(r, err, tol(1e-2));
  r.passed = r.passed && increasing && bounded;
  r.detail = "|Vol1(K=1e-8) - 8 pi|; sweep ell in {0.6,1,2,5,20,1e4} " +
             std::string(increasing ? "increasing" : "NOT increasing") + (bounded ? ", below 8 pi" : ", exceeds 8 pi");
}

// --- 7 ---------------------------------------------------------------------
void continuity(CriterionResult& r, const std::function<double(double)>& tol) {
  double worst = 0.0;
  for (double lam : {0.5, 1.0, 2.0}) {
    const ModelParams p = ModelParams::make(lam, 1.0 / (2.0 * lam));
    const double target = 2.0 * kPi * kPi * lam;
    const double near = volume(p, lam / 2.0 * (1.0 - 1e-9), 1);
    const double constant = enumerate(p).branches.front().volume;
    worst = std::max({worst, std::abs(near - target) / target, std::abs(constant - target) / target});
  }
  set_error(r, worst, tol(1e-6));
  r.detail = "relative gap of Vol1(K -> lambda/2) and Vol0(ell = 1/(2 lambda)) to 2 pi^2 lambda";
}

// --- 8 ---------------------------------------------------------------------
void residual(CriterionResult& r, const std::function<double(double)>& tol) {
  const ModelParams p = ModelParams::make(1.0, 1.0);
  const BranchSolve b = solve_K(p, kPi);
  const TorusSolution s = reconstruct(p, b.K, 1, 1024);
  const double fi = first_integral_defect(s);
  set_error(r, std::max(s.residual_sup, fi), tol(1e-8));
  r.detail = "residual_sup " + sci(s.residual_sup) + ", first-integral defect " + sci(fi);
}

// --- 9 ---------------------------------------------------------------------
void cross_method(CriterionResult& r, const std::function<double(double)>& tol) {
  const ModelParams p = ModelParams::make(1.0, 1.0);
  const BranchSolve b = solve_K(p, kPi);
  const TorusSolution s = reconstruct(p, b.K, 1, 1024);
  const double level = s.volume / (8.0 * kPi);

  const GalerkinModel model(p, 64);
  const GalerkinResult g = model.minimize(8, 0);
  const double energy_err = std::abs(g.energy - level) / level;

  const FourierState aligned = normalize_phase(translate(g.state, best_translation(model, g.state, s.f)));
  const std::vector<double> rho = density(model, aligned, s.n_grid());
  double profile_err = 0.0;
  for (int j = 0; j < s.n_grid(); ++j)
    profile_err = std::max(profile_err, std::abs(std::sqrt(rho[j]) - std::sqrt(s.f[j])));

  set_error(r, std::max(energy_err, profile_err), tol(1e-4));
  r.detail = "energy rel err " + sci(energy_err) + ", |psi| vs sqrt(f) sup err " + sci(profile_err);
}

// --- 10 --------------------------------------------------------------------
void constant_only(CriterionResult& r, const std::function<double(double)>& tol) {
  const ModelParams p = ModelParams::make(1.0, 0.4);
  const GalerkinResult g = GalerkinModel(p, 64).minimize(8, 0);
  double worst = 0.0;
  int random_starts = 0;
  bool all_converged = true;
  for (const auto& s : g.starts) {
    if (s.origin.rfind("random-", 0) == 0) ++random_starts;
    if (!s.converged) {
      all_converged = false;
      continue;
    }
    worst = std::max(worst, std::abs(s.energy - 0.2 * kPi));
  }
  set_error(r, worst, tol(1e-6));
  r.passed = r.passed && all_converged && random_starts == 8;
  r.detail = "max |E - 0.2 pi| over " + std::to_string(g.starts.size()) + " starts (" +
             std::to_string(random_starts) + " random)" + (all_converged ? "" : "; some start did not converge");
}

// --- 11 --------------------------------------------------------------------
void scaling(CriterionResult& r, const std::function<double(double)>& tol) {
  double worst = 0.0;
  for (double lam : {0.5, 1.0, 2.0}) {
    for (double ratio : {0.1, 0.2, 0.3, 0.4}) {
      const ModelParams p = ModelParams::make(lam, 1.0);
      const ModelParams unit = ModelParams::make(1.0, lam);
      const double lhs = volume(p, ratio * lam, 1);
      const double rhs = lam * volume(unit, ratio, 1);
      worst = std::max(worst, std::abs(lhs - rhs) / std::abs(lhs));
    }
  }
  set_error(r, worst, tol(1e-8));
  r.detail = "max relative |Vol(lambda, K) - lambda Vol(1, K/lambda)| over 12 grid points";
}

// --- 12 --------------------------------------------------------------------
void variational(CriterionResult& r, const std::function<double(double)>& tol) {
  const ModelParams p = ModelParams::make(1.0, 1.0);
  const GalerkinModel model(p, 32);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  double worst_bound = 0.0; // largest ||g(u)||^2 / (1/2 int |u|^4)
  for (int i = 0; i < 100; ++i) {
    const double scale = std::exp(std::log(0.1) + unit(rng) * std::log(30.0));
    const FourierState u = scale * model.random_direction(rng());
    const ReductionResult red = model.reduction_map(u);
    const double lhs = model.h_inner(red.w, red.w);
    const double rhs = 0.5 * model.quartic(u);
    worst_bound = std::max(worst_bound, lhs / rhs);
  }

  int unimodal_failures = 0;
  for (int i = 0; i < 100; ++i) {
    const FourierState v = model.random_direction(rng());
    const double ts = model.nehari_scale(v);
    std::vector<double> values;
    for (int j = 0; j < 25; ++j) values.push_back(model.ray_energy(v, ts * std::exp(std::log(0.2) + j * std::log(15.0) / 24.0)));
    const auto peak = std::max_element(values.begin(), values.end()) - values.begin();
    bool ok = true;
    for (long j = 1; j <= peak; ++j) ok = ok && values[j] > values[j - 1];
    for (std::size_t j = peak + 1; j < values.size(); ++j) ok = ok && values[j] < values[j - 1];
    if (!ok) ++unimodal_failures;
  }

  double worst_fd = 0.0;
  FourierState x = FourierState::zero(p, 32);
  {
    std::normal_distribution<double> normal;
    for (int n = -32; n <= 32; ++n) {
      const double amp = 1.0 / (1.0 + n * n);
      x.a(n) = amp * Complex(normal(rng), normal(rng));
      x.b(n) = amp * Complex(normal(rng), normal(rng));
    }
    for (int i = 0; i < 20; ++i) {
      FourierState h = FourierState::zero(p, 32);
      for (int n = -32; n <= 32; ++n) {
        const double amp = 1.0 / (1.0 + n * n);
        h.a(n) = amp * Complex(normal(rng), normal(rng));
        h.b(n) = amp * Complex(normal(rng), normal(rng));
      }
      const double step = 1e-6;
      const double fd = (model.energy(x + step * h) - model.energy(x - step * h)) / (2.0 * step);
      const double dd = model.directional_derivative(x, h);
      worst_fd = std::max(worst_fd, std::abs(fd - dd) / std::max(std::abs(dd), 1e-300));
    }
  }

  set_error(r, worst_fd, tol(1e-6));
  r.passed = r.passed && worst_bound <= 1.0 && unimodal_failures == 0;
  r.detail = "FD rel err " + sci(worst_fd) + "; max ||g(u)||^2 / (1/2 int|u|^4) = " + sci(worst_bound) +
             " over 100 u; " + std::to_string(unimodal_failures) + "/100 non-unimodal rays";
}

// --- 13 --------------------------------------------------------------------
void spectrum(CriterionResult& r, const std::function<double(double)>& tol) {
  double worst = 0.0;
  bool symmetric = true, gap_ok = true;
  for (double lam : {0.5, 1.0, 2.0}) {
    for (double ell : {0.4, 1.0, 2.5}) {
      const SpectralSplit s(ModelParams::make(lam, ell), 64);
      for (int n = -64; n <= 64; ++n) {
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(s.block(n));
        const double w = std::sqrt((n / ell) * (n / ell) + lam * lam);
        worst = std::max({worst, std::abs(es.eigenvalues()[0] + w) / w, std::abs(es.eigenvalues()[1] - w) / w});
      }
      const std::vector<double> sp = s.spectrum();
      for (std::size_t i = 0; i < sp.size(); ++i) symmetric = symmetric && sp[i] == -sp[sp.size() - 1 - i];
      gap_ok = gap_ok && s.gap() == lam;
    }
  }
  set_error(r, worst, tol(1e-13));
  r.passed = r.passed && symmetric && gap_ok;
  r.detail = "max rel eigenvalue error vs dense solver; spectrum " + std::string(symmetric ? "symmetric" : "ASYMMETRIC") +
             ", gap " + (gap_ok ? "= lambda" : "!= lambda");
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {1, "degenerate-period", "half-period tends to pi/(2 lambda) as K -> lambda/2", degenerate_period},
      {2, "monotonicity", "half-period strictly decreasing in K", monotonicity},
      {3, "branch-count", "enumerate returns d + 1 branches", branch_count_check},
      {4, "constant-volume", "constant-branch volume 4 pi^2 lambda^2 ell", constant_volume},
      {5, "bounds", "Vol1 < min(4 pi^2 lambda^2 ell, 8 pi lambda), sqrt(Vol1) < 2 sqrt(pi)", bounds},
      {6, "volume-limit", "Vol1 -> 8 pi lambda, increasing in ell", volume_limit},
      {7, "continuity", "Vol1 meets the constant branch at ell = 1/(2 lambda)", continuity},
      {8, "residual", "reconstructed k=1 profile solves the ODE", residual},
      {9, "cross-method", "Galerkin ground state vs quadrature", cross_method},
      {10, "constant-only", "only the constant state for ell <= 1/(2 lambda)", constant_only},
      {11, "scaling", "Vol(lambda, K) = lambda Vol(1, K/lambda)", scaling},
      {12, "variational", "reduction bound, ray unimodality, gradient check", variational},
      {13, "spectrum", "per-mode eigenvalues +-sqrt((n/ell)^2 + lambda^2)", spectrum},
  };
  return list;
}

} // namespace

std::vector<std::string> criterion_keys() {
  std::vector<std::string> keys;
  for (const auto& c : criteria()) keys.emplace_back(c.key);
  return keys;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  const auto keys = criterion_keys();
  for (const auto& k : options.only)
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) throw DomainError("unknown criterion: " + k);

  const std::function<double(double)> tol = [&](double pinned) { return options.tolerance.value_or(pinned); };
  std::vector<CriterionResult> out;
  for (const auto& c : criteria()) {
    if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), c.key) == options.only.end())
      continue;
    CriterionResult r;
    r.id = c.id;
    r.key = c.key;
    r.title = c.title;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(r, tol);
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  char head[160];
  if (r.margin_type)
    std::snprintf(head, sizeof head, "%s %2d %-18s margin=%-10s > 0          %7.2fs  ", r.passed ? "PASS" : "FAIL",
                  r.id, r.key.c_str(), sci(r.measured).c_str(), r.seconds);
  else
    std::snprintf(head, sizeof head, "%s %2d %-18s measured=%-10s tol=%-9s %7.2fs  ", r.passed ? "PASS" : "FAIL",
                  r.id, r.key.c_str(), sci(r.measured).c_str(), sci(r.tolerance).c_str(), r.seconds);
  return head + r.detail;
}

} // namespace syt
