#pragma once

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace syt {

struct QuadratureResult {
  double value = 0.0;
  double err = 0.0;
};

namespace detail {

template <typename F>
void integrate_panel(const F& f, double a, double b, double tol, int depth,
                     QuadratureResult& acc) {
  using boost::math::quadrature::gauss;
  const double coarse = gauss<double, 15>::integrate(f, a, b);
  const double fine = gauss<double, 30>::integrate(f, a, b);
  const double diff = std::abs(fine - coarse);
  const double floor = 32.0 * std::numeric_limits<double>::epsilon() * std::abs(fine);
  if (diff <= std::max(tol, floor) || depth >= 40) {
    acc.value += fine;
    acc.err += diff;
    return;
  }
  const double mid = 0.5 * (a + b);
  integrate_panel(f, a, mid, 0.5 * tol, depth + 1, acc);
  integrate_panel(f, mid, b, 0.5 * tol, depth + 1, acc);
}

} // namespace detail

/// Integrates a function that is analytic on [a, b] but may have a complex
/// singularity at distance `singular_scale` from the left endpoint `a`.
///
/// The interval is cut into geometrically graded panels a + scale*{0,1,2,4,...}
/// so every panel stays a fixed number of panel-widths away from the
/// singularity; each panel is integrated by Gauss-Legendre of order 15 and its
/// doubled order 30, and split further when the two disagree. `err` is the sum
/// of the per-panel order-doubling differences.
template <typename F>
QuadratureResult integrate_graded(const F& f, double a, double b, double singular_scale,
                                  double tol) {
  QuadratureResult acc;
  if (!(b > a)) return acc;
  const double length = b - a;
  std::vector<double> cuts{a};
  if (singular_scale > 0.0 && singular_scale < 0.25 * length) {
    double h = singular_scale;
    while (a + h < b - 0.5 * singular_scale) {
      cuts.push_back(a + h);
      h *= 2.0;
    }
  }
  cuts.push_back(b);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double share = (cuts[i + 1] - cuts[i]) / length;
    detail::integrate_panel(f, cuts[i], cuts[i + 1], std::max(tol * share, 1e-300), 0, acc);
  }
  return acc;
}

} // namespace syt
