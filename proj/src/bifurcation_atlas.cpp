#include "syt/bifurcation_atlas.hpp"

#include "syt/errors.hpp"
#include "syt/parallel.hpp"
#include "syt/torus_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace syt {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kIntegerGuard = 1e-12;

// Accuracy assigned to a quadrature volume: the angle-form integral is
// accurate to ~1e-15 relative and K* carries at most 1e-10 in eta, which
// moves the volume by far less than this.
double volume_error(double vol) { return 1e-12 * std::abs(vol); }

BranchRecord winding_branch(const ModelParams& params, int k) {
  const BranchSolve b = solve_K(params, kPi * params.ell / k);
  BranchRecord r;
  r.kind = BranchKind::winding;
  r.k = k;
  r.K = b.K;
  r.log_K = b.log_K;
  r.underflow = b.underflow;
  r.half_period = kPi * params.ell / k;
  const double lam = params.lambda;
  const double excess = k > 1 ? 8.0 * kPi * lam * (k - 1) : 0.0;
  if (b.underflow) {
    r.volume = 8.0 * kPi * lam * k;
    r.margin_8pilambda = -excess;
  } else {
    r.volume = volume(params, b.K, k);
    r.margin_8pilambda = volume_gap(params, b.K, k) - excess;
  }
  r.energy = r.volume / (8.0 * kPi);
  r.margin_const = params.constant_volume() - r.volume;
  return r;
}

} // namespace

std::string to_string(BranchKind kind) { return kind == BranchKind::constant ? "constant" : "winding"; }

int branch_count(const ModelParams& params) {
  params.validate();
  const double x = 2.0 * params.lambda * params.ell;
  const double n = std::round(x);
  const double top = std::abs(x - n) <= kIntegerGuard * std::max(1.0, x) ? n : std::ceil(x);
  return std::max(0, static_cast<int>(top) - 1);
}

BifurcationDiagram enumerate(const ModelParams& params) {
  params.validate();
  BifurcationDiagram diag;
  diag.params = params;
  diag.d = branch_count(params);

  BranchRecord c;
  c.kind = BranchKind::constant;
  c.K = params.k_max();
  c.log_K = std::log(c.K);
  c.volume = params.constant_volume();
  c.energy = c.volume / (8.0 * kPi);
  c.half_period = params.half_period_floor();
  c.margin_const = 0.0;
  c.margin_8pilambda = params.volume_ceiling() - c.volume;

  std::vector<BranchRecord> winding(diag.d);
  parallel_for(winding.size(), [&](std::size_t i) { winding[i] = winding_branch(params, static_cast<int>(i) + 1); });

  diag.branches.push_back(c);
  for (auto& w : winding) diag.branches.push_back(w);
  std::stable_sort(diag.branches.begin(), diag.branches.end(),
                   [](const BranchRecord& a, const BranchRecord& b) { return a.energy < b.energy; });
  return diag;
}

std::vector<double> branch_points(const ModelParams& params, int k_max) {
  params.validate();
  if (k_max < 0) throw DomainError("k_max must be non-negative");
  std::vector<double> out;
  for (int k = 1; k <= k_max; ++k) out.push_back(k / (2.0 * params.lambda));
  return out;
}

bool BoundReport::all_hold() const {
  return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.holds(); });
}

BoundReport check_bounds(const BifurcationDiagram& diagram) {
  if (diagram.d < 1) throw DomainError("check_bounds needs a winding branch (d >= 1)");
  const auto it = std::find_if(diagram.branches.begin(), diagram.branches.end(),
                               [](const BranchRecord& b) { return b.kind == BranchKind::winding && b.k == 1; });
  if (it == diagram.branches.end()) throw DomainError("diagram has no k = 1 branch");
  const BranchRecord& b = *it;
  const ModelParams& p = diagram.params;
  const double err = volume_error(b.volume);

  BoundReport report;
  report.volume = b.volume;
  report.checks.push_back({"Vol1 < 4 pi^2 lambda^2 ell", b.margin_const, err});
  report.checks.push_back({"Vol1 < 8 pi lambda", b.margin_8pilambda, b.underflow ? 0.0 : err});
  if (p.lambda == 0.5) {
    // 2 sqrt(pi) - sqrt(Vol) = (4 pi - Vol) / (2 sqrt(pi) + sqrt(Vol)), and 4 pi = 8 pi lambda here.
    const double denom = 2.0 * std::sqrt(kPi) + std::sqrt(b.volume);
    report.checks.push_back({"sqrt(Vol1) < 2 sqrt(pi)", b.margin_8pilambda / denom, err / denom});
  }
  for (const auto& c : report.checks)
    if (c.margin < -c.err) throw BoundViolation(c.inequality, c.margin);
  return report;
}

std::vector<SweepRow> volume_sweep(const ModelParams& params_base, const std::vector<double>& ell_grid) {
  params_base.validate();
  const double start = 1.0 / (2.0 * params_base.lambda);
  for (std::size_t i = 0; i < ell_grid.size(); ++i) {
    if (!(ell_grid[i] > start)) throw NoBranchError("no winding-1 branch for ell <= 1/(2 lambda)");
    if (i > 0 && !(ell_grid[i] > ell_grid[i - 1])) throw DomainError("sweep grid must be strictly increasing");
  }
  std::vector<SweepRow> rows(ell_grid.size());
  parallel_for(rows.size(), [&](std::size_t i) {
    const ModelParams p = ModelParams::make(params_base.lambda, ell_grid[i]);
    const BranchRecord b = winding_branch(p, 1);
    rows[i] = SweepRow{p.ell, b.K, b.log_K, b.half_period, b.volume, b.margin_8pilambda, b.underflow};
  });
  return rows;
}

bool sweep_is_increasing(const std::vector<SweepRow>& rows) {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const SweepRow& a = rows[i - 1];
    const SweepRow& b = rows[i];
    if (b.volume < a.volume) return false;
    if (b.gap < a.gap) continue;
    if (b.gap == 0.0 && a.gap == 0.0 && b.log_K < a.log_K) continue;
    return false;
  }
  return true;
}

} // namespace syt
