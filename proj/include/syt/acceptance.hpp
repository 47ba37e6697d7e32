#pragma once

#include <optional>
#include <string>
#include <vector>

namespace syt {

struct CriterionResult {
  int id = 0;
  std::string key;
  std::string title;
  bool passed = false;
  double measured = 0.0;  ///< worst error, or smallest margin for bound-type checks
  double tolerance = 0.0; ///< threshold the measurement was held to
  bool margin_type = false; ///< passes when measured > tolerance instead of <=
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  /// Replaces the pinned tolerance of every error-type criterion.
  std::optional<double> tolerance;
  /// Criterion keys to run; empty means all.
  std::vector<std::string> only;
};

/// Keys in execution order: degenerate-period, monotonicity, branch-count,
/// constant-volume, bounds, volume-limit, continuity, residual, cross-method,
/// constant-only, scaling, variational, spectrum.
std::vector<std::string> criterion_keys();

/// Throws DomainError for an unknown key in options.only.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

/// One table line: status, id, key, measured vs tolerance, time, detail.
std::string format_result(const CriterionResult& r);

} // namespace syt
