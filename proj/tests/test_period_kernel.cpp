#include "oracles.hpp"

#include <doctest.h>

#include "syt/errors.hpp"
#include "syt/period_kernel.hpp"

#include <cmath>
#include <numbers>
#include <vector>

using namespace syt;
using std::numbers::pi;

namespace {

ModelParams P(double lambda) { return ModelParams::make(lambda, 1.0); }

// mpmath at 40 digits: ellipk(m) / s1 with m = 1 - (s0/s1)^2.
constexpr double golden_eta_1_025 = 1.854074677301371918;

} // namespace

TEST_CASE("params validation") {
  CHECK_THROWS_AS(ModelParams::make(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(ModelParams::make(1.0, -1.0), DomainError);
  CHECK_THROWS_AS(ModelParams::make(std::nan(""), 1.0), DomainError);
  CHECK(ModelParams::make(0.5, 2.0).constant_volume() == doctest::Approx(4 * pi * pi * 0.25 * 2));
}

TEST_CASE("roots examples") {
  auto r = roots(P(1), 0.5);
  CHECK(r.s0 == 1.0);
  CHECK(r.s1 == 1.0);

  r = roots(P(1), 0.375);
  CHECK(r.s0 == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r.s1 == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(std::abs(oracle::F(1, 0.375, r.s0)) < 1e-15);
  CHECK(std::abs(oracle::F(1, 0.375, r.s1)) < 1e-15);

  // For lambda = 2 the pair 2 -+ sqrt(2) belongs to K = 1/2; K = 1 is the
  // double root.
  r = roots(P(2), 0.5);
  CHECK(r.s0 == doctest::Approx(2 - std::sqrt(2.0)).epsilon(1e-15));
  CHECK(r.s1 == doctest::Approx(2 + std::sqrt(2.0)).epsilon(1e-15));
  CHECK(std::abs(oracle::F(2, 0.5, r.s0)) < 1e-14);
  CHECK(std::abs(oracle::F(2, 0.5, r.s1)) < 1e-14);
  r = roots(P(2), 1.0);
  CHECK(r.s0 == 2.0);
  CHECK(r.s1 == 2.0);

  CHECK_THROWS_AS(roots(P(1), 0.6), DomainError);
  CHECK_THROWS_AS(roots(P(1), 0.0), DomainError);
}

TEST_CASE("roots satisfy Vieta and bracket a positive kernel") {
  for (double lambda : {0.5, 1.0, 2.0, 7.0}) {
    for (int i = 1; i < 50; ++i) {
      const double K = 0.5 * lambda * i / 50.0 * (i == 1 ? 1e-6 : 1.0);
      const auto r = roots(P(lambda), K);
      CHECK(r.s0 + r.s1 == doctest::Approx(2 * lambda).epsilon(1e-12));
      CHECK(r.s0 * r.s1 == doctest::Approx(2 * lambda * K).epsilon(1e-12));
      CHECK(r.s0 > 0.0);
      for (int j = 1; j < 10; ++j) {
        const double s = r.s0 + (r.s1 - r.s0) * j / 10.0;
        CHECK(f_kernel(P(lambda), K, s) > 0.0);
      }
    }
  }
}

TEST_CASE("f_kernel examples and factored form") {
  CHECK(f_kernel(P(1), 0.5, 1.0) == 0.0);
  CHECK(f_kernel(P(1), 0.375, 1.0) == doctest::Approx(0.234375).epsilon(1e-15));
  CHECK(f_kernel_factored(P(1), 0.375, 1.0) == doctest::Approx(0.5 * 0.5 * 0.5 * 1.875).epsilon(1e-15));
  CHECK(f_kernel(P(1), 0.375, 0.5) == 0.0);
  for (double s : {0.0, 0.3, 0.9, 1.2, 3.0}) {
    CHECK(f_kernel(P(1.7), 0.3, s) == doctest::Approx(f_kernel_factored(P(1.7), 0.3, s)).epsilon(1e-13));
    CHECK(f_kernel(P(1.7), 0.3, s) == doctest::Approx(oracle::F(1.7, 0.3, s)).epsilon(1e-15));
  }
}

TEST_CASE("eta examples") {
  const auto near = eta(P(1), 0.5 - 1e-10, roots(P(1), 0.5 - 1e-10).s1);
  CHECK(std::abs(near.value - pi / 2) < 1e-6);

  const auto r = roots(P(1), 0.25);
  CHECK(eta(P(1), 0.25, r.s0).value == 0.0);

  const auto full = eta(P(1), 0.25, r.s1, 1e-12);
  CHECK(full.value == doctest::Approx(golden_eta_1_025).epsilon(1e-13));
  CHECK(full.err <= 1e-12);
  // The golden value is the closed form, reproduced by the AGM oracle.
  CHECK(oracle::eta_closed(1, 0.25) == doctest::Approx(golden_eta_1_025).epsilon(1e-14));
}

TEST_CASE("eta domain errors") {
  CHECK_THROWS_AS(eta(P(1), 0.6, 1.0), DomainError);
  CHECK_THROWS_AS(eta(P(1), -0.1, 1.0), DomainError);
  const auto r = roots(P(1), 0.25);
  CHECK_THROWS_AS(eta(P(1), 0.25, r.s1 + 1e-3), DomainError);
  CHECK_THROWS_AS(eta(P(1), 0.25, r.s0 - 1e-3), DomainError);
  CHECK_THROWS_AS(eta(P(1), 0.5, 1.0), DegenerateError);
  CHECK_THROWS_AS(half_period(P(1), 0.5), DegenerateError);
}

TEST_CASE("half period against the closed form") {
  for (double lambda : {0.5, 1.0, 2.0}) {
    for (double frac : {1e-12, 1e-8, 1e-4, 0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99, 0.999999}) {
      const double K = 0.5 * lambda * frac;
      const auto h = half_period(P(lambda), K);
      CAPTURE(lambda);
      CAPTURE(K);
      CHECK(std::abs(h.eta - oracle::eta_closed(lambda, K)) <= 1e-10 + 1e-13 * h.eta);
    }
  }
}

TEST_CASE("partial eta against tanh-sinh in the original variable") {
  for (double K : {0.05, 0.25, 0.45}) {
    const auto r = roots(P(1), K);
    for (double frac : {0.1, 0.5, 0.9, 1.0}) {
      const double f = r.s0 + frac * (r.s1 - r.s0);
      const double ref = oracle::eta_tanh_sinh(1.0, K, frac == 1.0 ? r.s1 : f);
      CAPTURE(K);
      CAPTURE(frac);
      CHECK(eta(P(1), K, frac == 1.0 ? r.s1 : f).value == doctest::Approx(ref).epsilon(1e-9));
    }
  }
}

TEST_CASE("angle form pieces") {
  const auto r = roots(P(1), 0.25);
  CHECK(profile_at_angle(r, 0.0) == r.s0);
  CHECK(profile_at_angle(r, pi / 2) == doctest::Approx(r.s1).epsilon(1e-15));
  // d eta / d theta = (d eta / ds)(ds / d theta) with ds/dtheta = (s1 - s0) sin 2 theta.
  const double theta = 0.7;
  const double s = profile_at_angle(r, theta);
  const double chain = (r.s1 - r.s0) * std::sin(2 * theta) / (2.0 * std::sqrt(oracle::F(1, 0.25, s)));
  CHECK(eta_angle_derivative(r, theta) == doctest::Approx(chain).epsilon(1e-12));
  CHECK(eta_to_angle(P(1), 0.25, pi / 2).value == doctest::Approx(golden_eta_1_025).epsilon(1e-12));
  CHECK(eta_to_angle(P(1), 0.25, 0.0).value == 0.0);
}

TEST_CASE("eta is strictly decreasing in K") {
  for (double lambda : {0.5, 1.0, 2.0}) {
    std::vector<PeriodResult> row;
    for (int i = 1; i <= 50; ++i) row.push_back(half_period(P(lambda), 0.5 * lambda * i / 51.0));
    for (std::size_t i = 0; i < row.size(); ++i)
      for (std::size_t j = i + 1; j < row.size(); ++j)
        CHECK(row[i].eta > row[j].eta + std::max(row[i].err, row[j].err));
    for (const auto& h : row) CHECK(h.eta >= pi / (2 * lambda) - h.err);
  }
}

TEST_CASE("eta diverges as K goes to zero") {
  const double e6 = half_period(P(1), 1e-6).eta;
  const double e8 = half_period(P(1), 1e-8).eta;
  CHECK(e6 > 5.0);
  CHECK(e8 > e6);
  // Logarithmic tail: eta ~ ln(8 / K) / 2 for lambda = 1.
  CHECK(e8 - e6 == doctest::Approx(0.5 * std::log(100.0)).epsilon(1e-5));
}

TEST_CASE("degenerate limit for several lambda") {
  for (double lambda : {0.5, 1.0, 2.0}) {
    const double K = lambda / 2 - 1e-10;
    CHECK(std::abs(half_period(P(lambda), K).eta - pi / (2 * lambda)) < 1e-6);
  }
}

TEST_CASE("eta scaling covariance") {
  for (double lambda : {0.5, 2.0, 3.5}) {
    for (double q : {0.05, 0.2, 0.45}) {
      const double lhs = half_period(P(lambda), q * lambda).eta;
      const double rhs = half_period(P(1), q).eta / lambda;
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
    }
  }
}
