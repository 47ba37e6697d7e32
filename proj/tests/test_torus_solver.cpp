#include "oracles.hpp"

#include <doctest.h>

#include "syt/errors.hpp"
#include "syt/fourier.hpp"
#include "syt/torus_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace syt;
using std::numbers::pi;

namespace {

// mpmath at 40 digits: root of ellipk(1 - (s0/s1)^2) / s1 = pi for lambda = 1,
// and 4 pi s1 ellipe(.) at that root.
constexpr double golden_K_star = 0.01544631336644036123;
constexpr double golden_vol_1 = 24.94151451830413201;

ModelParams P(double lambda, double ell) { return ModelParams::make(lambda, ell); }

double sup_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

} // namespace

TEST_CASE("solve_K examples") {
  const auto near = solve_K(P(1, 1), pi / 2 + 1e-9);
  CHECK(std::abs(near.K - 0.5) < 1e-4);

  CHECK_THROWS_AS(solve_K(P(1, 1), pi / 2), NoBranchError);
  CHECK_THROWS_AS(solve_K(P(1, 1), 1.0), NoBranchError);

  const auto star = solve_K(P(1, 1), pi);
  CHECK(star.K > 0.0);
  CHECK(star.K < 0.5);
  CHECK(star.K == doctest::Approx(golden_K_star).epsilon(1e-12));
  CHECK(std::abs(oracle::eta_closed(1.0, star.K) - pi) < 1e-9);
  CHECK(star.log_K == doctest::Approx(std::log(star.K)).epsilon(1e-14));
  CHECK_FALSE(star.underflow);
}

TEST_CASE("solve_K inverts the closed-form half period") {
  for (double lambda : {0.5, 1.0, 2.0}) {
    for (double factor : {1.000001, 1.01, 1.3, 2.0, 4.0, 9.0}) {
      const double target = factor * pi / (2 * lambda);
      const auto s = solve_K(P(lambda, 1), target);
      CAPTURE(lambda);
      CAPTURE(factor);
      CHECK(std::abs(oracle::eta_closed(lambda, s.K) - target) < 1e-9);
    }
  }
}

TEST_CASE("solve_K far in the tail reports underflow") {
  const auto s = solve_K(P(1, 1), 1e4);
  CHECK(s.underflow);
  CHECK(std::isfinite(s.log_K));
  // eta ~ ln(8/K)/2, so ln K ~ ln 8 - 2 eta.
  CHECK(s.log_K == doctest::Approx(std::log(8.0) - 2e4).epsilon(1e-10));
}

TEST_CASE("reconstruct on the constant branch") {
  for (int k : {1, 2, 5}) {
    const auto sol = reconstruct(P(1, 1), 0.5, k, 256);
    CHECK(sol.is_constant());
    CHECK(sol.n_grid() == 256);
    for (int j = 0; j < sol.n_grid(); ++j) {
      CHECK(sol.f[j] == 1.0);
      CHECK(sol.g[j] == 0.0);
      CHECK(sol.u[j] == 0.5);
      CHECK(sol.v[j] == 0.5);
    }
    CHECK(sol.residual_sup == 0.0);
  }
  const auto c = constant_solution(P(2, 0.3), 64);
  CHECK(c.u[7] == doctest::Approx(std::sqrt(2.0) / 2));
  CHECK(c.volume == doctest::Approx(P(2, 0.3).constant_volume()).epsilon(1e-14));
}

TEST_CASE("reconstruct errors") {
  CHECK_THROWS_AS(reconstruct(P(1, 1), 0.6, 1), DomainError);
  CHECK_THROWS_AS(reconstruct(P(1, 1), 0.0, 1), DomainError);
  CHECK_THROWS_AS(reconstruct(P(1, 1), golden_K_star, 0), DomainError);
  CHECK_THROWS_AS(reconstruct(P(1, 1), golden_K_star, 1, 1), DomainError);
  // K does not close up on a circle of this length.
  CHECK_THROWS_AS(reconstruct(P(1, 1), 0.2, 1), DomainError);
}

TEST_CASE("k = 1 profile at lambda = 1, ell = 1") {
  const ModelParams p = P(1, 1);
  const double K = solve_K(p, pi).K;
  const auto sol = reconstruct(p, K, 1, 1024);
  const auto r = roots(p, K);

  CHECK(sol.k == 1);
  CHECK(sol.residual_sup < 1e-8);
  CHECK(sol.f[0] == doctest::Approx(r.s0).epsilon(1e-12));
  CHECK(sol.f[512] == doctest::Approx(r.s1).epsilon(1e-12));
  CHECK(*std::min_element(sol.f.begin(), sol.f.end()) >= r.s0 - 1e-12);
  CHECK(*std::max_element(sol.f.begin(), sol.f.end()) <= r.s1 + 1e-12);
  for (int j = 0; j < sol.n_grid(); ++j) {
    CHECK(sol.u[j] > 0.0);
    CHECK(sol.v[j] > 0.0);
  }
  // f increases on the first half period.
  for (int j = 0; j < 512; ++j) CHECK(sol.f[j + 1] > sol.f[j]);

  const auto check = check_solution(sol);
  CHECK(check.ok);
  CHECK(first_integral_defect(sol) <= 1e-8 * r.s1 * r.s1);
}

TEST_CASE("reduced residual by eighth-order differences") {
  const ModelParams p = P(1, 1);
  const auto sol = reconstruct(p, solve_K(p, pi).K, 1, 1024);
  const double period = 2 * pi * p.ell;
  const auto du = oracle::derivative_fd8(sol.u, period);
  const auto dv = oracle::derivative_fd8(sol.v, period);
  double worst = 0.0;
  for (int j = 0; j < sol.n_grid(); ++j) {
    const double f = 2 * (sol.u[j] * sol.u[j] + sol.v[j] * sol.v[j]);
    worst = std::max(worst, std::abs(du[j] + sol.u[j] - f * sol.v[j]));
    worst = std::max(worst, std::abs(-dv[j] + sol.v[j] - f * sol.u[j]));
  }
  CHECK(worst < 1e-8);
  CHECK(reduced_residual(p, sol.u, sol.v) < 1e-8);
}

TEST_CASE("profile agrees with a shooting integration") {
  for (double ell : {0.6, 1.0, 1.5}) {
    const ModelParams p = P(1, ell);
    const auto sol = reconstruct(p, solve_K(p, pi * ell).K, 1, 512);
    std::vector<double> times(sol.t.begin(), sol.t.end());
    const auto traj = oracle::shoot(1.0, sol.u[0], sol.v[0], times);
    double worst = 0.0;
    for (std::size_t j = 0; j < times.size(); ++j) {
      worst = std::max(worst, std::abs(traj[j][0] - sol.u[j]));
      worst = std::max(worst, std::abs(traj[j][1] - sol.v[j]));
    }
    CAPTURE(ell);
    CHECK(worst < 1e-7);
  }
}

TEST_CASE("winding k = 2 repeats the k = 1 profile") {
  const double K = solve_K(P(1, 1), pi).K;
  const auto one = reconstruct(P(1, 1), K, 1, 512);
  const auto two = reconstruct(P(1, 2), K, 2, 1024);
  for (int j = 0; j < 1024; ++j) CHECK(two.f[j] == doctest::Approx(one.f[j % 512]).epsilon(1e-11));
  CHECK(two.volume == doctest::Approx(2 * one.volume).epsilon(1e-12));
}

TEST_CASE("volume examples") {
  const ModelParams p = P(1, 1);
  CHECK(volume(p, 0.5 - 1e-13, 1) == doctest::Approx(2 * pi * pi).epsilon(1e-12));
  CHECK(volume(p, 0.5 - 1e-7, 1) == doctest::Approx(2 * pi * pi).epsilon(1e-6));
  CHECK(volume(p, 0.5, 1) == doctest::Approx(4 * pi * pi).epsilon(1e-15));
  CHECK(std::abs(volume(p, 1e-8, 1) - 8 * pi) < 1e-2);

  const double vstar = volume(p, golden_K_star, 1);
  CHECK(vstar == doctest::Approx(golden_vol_1).epsilon(1e-12));
  CHECK(vstar < 8 * pi);
  CHECK(oracle::volume_closed(1.0, golden_K_star, 1) == doctest::Approx(golden_vol_1).epsilon(1e-13));
}

TEST_CASE("volume against the closed form") {
  for (double lambda : {0.5, 1.0, 2.0}) {
    for (double q : {1e-10, 1e-5, 0.01, 0.1, 0.25, 0.4, 0.49, 0.4999}) {
      for (int k : {1, 3}) {
        const double K = q * lambda;
        CAPTURE(lambda);
        CAPTURE(q);
        CHECK(volume(P(lambda, 1), K, k) ==
              doctest::Approx(oracle::volume_closed(lambda, K, k)).epsilon(1e-11));
        const double gap = 8 * pi * lambda * k - oracle::volume_closed(lambda, K, k);
        CHECK(std::abs(volume_gap(P(lambda, 1), K, k) - gap) <= 1e-11 * 8 * pi * lambda * k);
      }
    }
  }
}

TEST_CASE("volume gap keeps relative accuracy deep in the tail") {
  // The gap shrinks like K ln(1/K); only sign and scale are checked here.
  const double g12 = volume_gap(P(1, 1), 1e-12, 1);
  const double g30 = volume_gap(P(1, 1), 1e-30, 1);
  CHECK(g12 > 0.0);
  CHECK(g30 > 0.0);
  CHECK(g30 < g12);
  CHECK(g30 / g12 < 1e-16);
}

TEST_CASE("two-method volume agreement") {
  for (double ell : {0.6, 1.0, 3.0}) {
    const ModelParams p = P(1, ell);
    const double K = solve_K(p, pi * ell).K;
    const auto sol = reconstruct(p, K, 1, 2048);
    std::vector<double> f2(sol.f.size());
    for (std::size_t j = 0; j < f2.size(); ++j) f2[j] = sol.f[j] * sol.f[j];
    const double grid = 2 * pi * periodic_integral(f2, 2 * pi * ell);
    CAPTURE(ell);
    CHECK(grid == doctest::Approx(volume(p, K, 1)).epsilon(1e-6));
    CHECK(sol.volume == doctest::Approx(volume(p, K, 1)).epsilon(1e-14));
  }
}

TEST_CASE("scaling law for volume") {
  // Powers of two scale exactly in floating point; 0.7 and 3 do not.
  for (double lambda : {0.5, 0.7, 1.0, 2.0, 3.0}) {
    for (double q : {0.1, 0.2, 0.3, 0.4}) {
      const double lhs = volume(P(lambda, 1), q * lambda, 1);
      const double rhs = lambda * volume(P(1, lambda), q, 1);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
    }
  }
}

TEST_CASE("branch continuity at the bifurcation point") {
  for (double lambda : {0.5, 1.0, 2.0}) {
    for (int k : {1, 2}) {
      const double v = volume(P(lambda, 1), lambda / 2 * (1 - 1e-9), k);
      const double at_branch_point = P(lambda, k / (2 * lambda)).constant_volume();
      CHECK(v == doctest::Approx(2 * pi * pi * lambda * k).epsilon(1e-6));
      CHECK(v == doctest::Approx(at_branch_point).epsilon(1e-6));
    }
  }
}

TEST_CASE("spinor lift") {
  const auto c = spinor_lift(constant_solution(P(1, 1), 64), 0.0);
  CHECK(c.psi1[3].real() == doctest::Approx(0.5));
  CHECK(c.psi1[3].imag() == doctest::Approx(0.5));
  CHECK(c.psi2[3].real() == doctest::Approx(0.5));
  CHECK(c.psi2[3].imag() == doctest::Approx(-0.5));
  CHECK(spinor_residual(c) < 1e-14);

  const ModelParams p = P(1, 1);
  const auto sol = reconstruct(p, solve_K(p, pi).K, 1, 1024);
  for (double theta : {0.0, 0.4, pi, 2 * pi}) {
    const auto field = spinor_lift(sol, theta);
    for (int j = 0; j < sol.n_grid(); ++j) {
      const double dens = std::norm(field.psi1[j]) + std::norm(field.psi2[j]);
      CHECK(std::abs(dens - sol.f[j]) < 1e-10);
    }
    CHECK(spinor_residual(field) < 1e-7);
  }
}

TEST_CASE("constant branch check is clean") {
  const auto check = check_solution(constant_solution(P(0.5, 3), 128));
  CHECK(check.ok);
  CHECK(check.failures.empty());
}

TEST_CASE("tampered solution fails its check") {
  const ModelParams p = P(1, 1);
  auto sol = reconstruct(p, solve_K(p, pi).K, 1, 256);
  sol.f[17] += 1e-3;
  const auto check = check_solution(sol);
  CHECK_FALSE(check.ok);
  CHECK_FALSE(check.failures.empty());
}
