#include <doctest.h>

#include "syt/errors.hpp"
#include "syt/records.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <sstream>

using namespace syt;
using std::numbers::pi;

namespace {

ModelParams P(double lambda, double ell) { return ModelParams::make(lambda, ell); }

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

} // namespace

TEST_CASE("format_double round-trips") {
  for (double x : {0.1, 1.0 / 3.0, pi, -2.5e-300, 1e300, 0.0, 24.941514518304189}) {
    CHECK(std::stod(format_double(x)) == x);
  }
  CHECK(format_double(std::nan("")) == "null");
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-0.0) == "0");
}

TEST_CASE("solution record round trip") {
  const auto p = P(1, 1);
  const auto sol = reconstruct(p, solve_K(p, pi).K, 1, 256);
  const auto field = spinor_lift(sol, 0.3);
  const std::string text = solution_record(field);

  const auto j = nlohmann::json::parse(text);
  CHECK(j.at("format") == "syt-solution");
  CHECK(j.at("version").is_string());
  CHECK(j.at("n_grid") == 256);
  CHECK(j.at("samples").at("f").size() == 256);

  const auto back = parse_solution_record(text);
  CHECK(back.theta == 0.3);
  CHECK(back.solution.K == sol.K);
  CHECK(back.solution.k == 1);
  CHECK(back.solution.volume == sol.volume);
  CHECK(back.solution.residual_sup == sol.residual_sup);
  CHECK(back.solution.params.lambda == 1.0);
  CHECK(back.solution.f == sol.f);
  CHECK(back.solution.g == sol.g);
  CHECK(back.solution.u == sol.u);
  CHECK(back.solution.v == sol.v);
  CHECK(back.solution.t == sol.t);
  CHECK(back.psi1 == field.psi1);
  CHECK(back.psi2 == field.psi2);

  // Re-validation of the loaded profile and a byte-identical re-write.
  CHECK(check_solution(back.solution).ok);
  CHECK(solution_record(back) == text);
}

TEST_CASE("constant record round trip") {
  const auto field = spinor_lift(constant_solution(P(0.5, 3), 64), 0.0);
  const auto back = parse_solution_record(solution_record(field));
  CHECK(back.solution.is_constant());
  CHECK(check_solution(back.solution).ok);
}

TEST_CASE("malformed records are rejected") {
  CHECK_THROWS_AS(parse_solution_record("not json"), DomainError);
  CHECK_THROWS_AS(parse_solution_record("{\"format\": \"other\"}"), DomainError);
  const auto field = spinor_lift(constant_solution(P(1, 1), 64), 0.0);
  auto j = nlohmann::json::parse(solution_record(field));
  j["n_grid"] = 65;
  CHECK_THROWS_AS(parse_solution_record(j.dump()), DomainError);
  j = nlohmann::json::parse(solution_record(field));
  j["samples"]["u"].erase(0);
  CHECK_THROWS_AS(parse_solution_record(j.dump()), DomainError);
  j = nlohmann::json::parse(solution_record(field));
  j.erase("K");
  CHECK_THROWS_AS(parse_solution_record(j.dump()), DomainError);
}

TEST_CASE("galerkin record carries the coefficients exactly") {
  const GalerkinModel m(P(1, 0.8), 16);
  const auto g = m.minimize(1, 3);
  const std::string text = galerkin_record(m, g);
  const auto j = nlohmann::json::parse(text);
  CHECK(j.at("format") == "syt-galerkin");
  CHECK(j.at("spectral").at("N") == 16);
  CHECK(j.at("spectral").at("c1").size() == 2 * 33);
  CHECK(j.at("energy").get<double>() == g.energy);
  CHECK(j.at("starts").size() == g.starts.size());

  const auto x = parse_galerkin_record(text);
  CHECK(x.N == 16);
  CHECK(x.params.ell == 0.8);
  CHECK(x.c1 == g.state.c1);
  CHECK(x.c2 == g.state.c2);
  CHECK(galerkin_record(m, g) == text);
}

TEST_CASE("diagram csv layout") {
  const auto d = enumerate(P(1, 1.6));
  const auto rows = lines_of(diagram_csv(d));
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == "lambda,ell,branch_kind,k,K,half_period,volume,energy,margin_const,margin_8pilambda");
  CHECK(rows[1].rfind("1,1.6000000000000001,constant,0,0.5,", 0) == 0);
  CHECK(rows[2].find(",winding,1,") != std::string::npos);
  CHECK(rows[3].find(",winding,2,") != std::string::npos);
  CHECK(rows[4].find(",winding,3,") != std::string::npos);
  const auto j = nlohmann::json::parse(diagram_json(d));
  CHECK(j.at("d") == 3);
  CHECK(j.at("branches").size() == 4);
}

TEST_CASE("sweep csv layout") {
  const auto rows = volume_sweep(P(1, 1), {0.6, 1.0});
  const auto l = lines_of(sweep_csv(1.0, rows));
  REQUIRE(l.size() == 3);
  CHECK(l[0] == "lambda,ell,K,log_K,half_period,volume,gap_8pilambda,underflow");
  CHECK(l[2].rfind("1,1,0.015446313366435", 0) == 0);
  CHECK(nlohmann::json::parse(sweep_json(1.0, rows)).at("rows").size() == 2);
}

TEST_CASE("text files") {
  const auto path = std::filesystem::temp_directory_path() / "syt_records_test.txt";
  write_text_file(path.string(), "abc\n");
  CHECK(read_text_file(path.string()) == "abc\n");
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_text_file(path.string()), Error);
}
