#pragma once

#include "syt/bifurcation_atlas.hpp"
#include "syt/galerkin.hpp"
#include "syt/torus_solver.hpp"

#include <string>
#include <vector>

namespace syt {

/// Text form of a double with 17 significant digits, which round-trips
/// exactly; NaN becomes JSON null.
std::string format_double(double x);

/// Self-describing JSON record of a solved profile and its spinor lift.
std::string solution_record(const SpinorField& field);

/// Parses a record written by solution_record. The sample arrays are taken
/// verbatim; nothing is recomputed. Throws DomainError on malformed input.
SpinorField parse_solution_record(const std::string& text);

/// JSON record of a Galerkin run: the same header and sample layout as the
/// profile record plus a "spectral" section with the coefficients.
std::string galerkin_record(const GalerkinModel& model, const GalerkinResult& result);

/// Coefficients of a record written by galerkin_record.
FourierState parse_galerkin_record(const std::string& text);

/// Header: lambda,ell,branch_kind,k,K,half_period,volume,energy,margin_const,margin_8pilambda.
/// Rows: constant branch first, then winding branches by k.
std::string diagram_csv(const BifurcationDiagram& diagram);
std::string diagram_json(const BifurcationDiagram& diagram);

std::string sweep_csv(double lambda, const std::vector<SweepRow>& rows);
std::string sweep_json(double lambda, const std::vector<SweepRow>& rows);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

} // namespace syt
