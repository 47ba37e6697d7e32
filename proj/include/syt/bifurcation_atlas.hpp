#pragma once

#include "syt/model_params.hpp"

#include <string>
#include <vector>

namespace syt {

enum class BranchKind { constant, winding };

struct BranchRecord {
  BranchKind kind = BranchKind::constant;
  int k = 0; ///< winding number; 0 for the constant branch
  double K = 0.0;
  double log_K = 0.0;
  double volume = 0.0;
  double energy = 0.0;      ///< volume / (8 pi)
  double half_period = 0.0; ///< eta_K(s1); pi/(2 lambda) for the constant branch
  double margin_const = 0.0;     ///< 4 pi^2 lambda^2 ell - volume
  double margin_8pilambda = 0.0; ///< 8 pi lambda - volume
  bool underflow = false;
};

struct BifurcationDiagram {
  ModelParams params;
  int d = 0;
  std::vector<BranchRecord> branches; ///< ascending energy
};

/// d with d/(2 lambda) < ell <= (d+1)/(2 lambda); values of 2 lambda ell
/// within 1e-12 of an integer are snapped to it.
int branch_count(const ModelParams& params);

/// Constant branch plus every winding branch k with pi ell / k > pi/(2 lambda).
BifurcationDiagram enumerate(const ModelParams& params);

/// [k / (2 lambda) for k = 1..k_max].
std::vector<double> branch_points(const ModelParams& params, int k_max);

struct BoundCheck {
  std::string inequality;
  double margin = 0.0; ///< rhs - lhs; positive when the strict bound holds
  double err = 0.0;    ///< accuracy of the margin
  bool holds() const { return margin > 0.0; }
};

struct BoundReport {
  double volume = 0.0; ///< Vol_1
  std::vector<BoundCheck> checks;
  bool all_hold() const;
};

/// Checks Vol_1 < 4 pi^2 lambda^2 ell, Vol_1 < 8 pi lambda and, for
/// lambda = 1/2, sqrt(Vol_1) < 2 sqrt(pi). Throws DomainError when d < 1 and
/// BoundViolation when a margin is negative beyond its error.
BoundReport check_bounds(const BifurcationDiagram& diagram);

struct SweepRow {
  double ell = 0.0;
  double K = 0.0;
  double log_K = 0.0;
  double half_period = 0.0;
  double volume = 0.0;
  double gap = 0.0; ///< 8 pi lambda - volume
  bool underflow = false;
};

/// k = 1 branch along an increasing grid of ell > 1/(2 lambda).
std::vector<SweepRow> volume_sweep(const ModelParams& params_base, const std::vector<double>& ell_grid);

/// Volume strictly increasing along the rows: gap strictly decreasing, or
/// both gaps below double range with ln K strictly decreasing.
bool sweep_is_increasing(const std::vector<SweepRow>& rows);

std::string to_string(BranchKind kind);

} // namespace syt
