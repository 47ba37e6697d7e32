#include <doctest.h>

#include "cli.hpp"

#include "syt/records.hpp"
#include "syt/torus_solver.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <sstream>

using namespace syt;
using std::numbers::pi;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// Value of key=... in a summary line.
double field(const std::string& text, const std::string& key) {
  const auto pos = text.find(key + "=");
  REQUIRE(pos != std::string::npos);
  return std::stod(text.substr(pos + key.size() + 1));
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

} // namespace

TEST_CASE("period command") {
  auto r = run({"period", "--lambda", "1", "--K", "0.4999999999"});
  CHECK(r.code == cli::ok);
  CHECK(std::abs(field(r.out, "eta") - pi / 2) < 1e-6);

  r = run({"period", "--lambda", "1", "--K", "0.6"});
  CHECK(r.code == cli::domain_error);
  CHECK(r.err.find("error") != std::string::npos);

  r = run({"period", "--lambda", "1", "--K", "0.25"});
  CHECK(r.code == cli::ok);
  CHECK(field(r.out, "eta") == doctest::Approx(1.854074677301371918).epsilon(1e-13));

  r = run({"period", "--lambda", "1", "--K", "0.5"});
  CHECK(r.code == cli::domain_error);

  r = run({"period", "--lambda", "1", "--K", "0.25", "--format", "csv"});
  CHECK(r.out.rfind("lambda,K,s0,s1,eta,err\n", 0) == 0);
}

TEST_CASE("solve command") {
  auto r = run({"solve", "--lambda", "1", "--ell", "1", "--k", "1"});
  REQUIRE(r.code == cli::ok);
  const auto field_rec = parse_solution_record(r.out);
  CHECK(field_rec.solution.residual_sup < 1e-8);
  CHECK(field_rec.solution.n_grid() == 1024);
  CHECK(check_solution(field_rec.solution).ok);

  r = run({"solve", "--lambda", "1", "--ell", "0.4", "--k", "1"});
  CHECK(r.code == cli::no_such_branch);
  CHECK(r.err.find("d+1 = 1") != std::string::npos);

  r = run({"solve", "--lambda", "1", "--ell", "1", "--k", "0", "--grid", "64"});
  REQUIRE(r.code == cli::ok);
  const auto c = parse_solution_record(r.out);
  CHECK(c.solution.is_constant());
  CHECK(c.solution.volume == doctest::Approx(4 * pi * pi).epsilon(1e-14));

  CHECK(run({"solve", "--lambda", "1", "--ell", "1", "--k", "-1"}).code == cli::domain_error);
  CHECK(run({"solve", "--lambda", "1", "--ell", "1", "--k", "1", "--grid", "100"}).code == cli::domain_error);
}

TEST_CASE("solve output is deterministic and re-validates") {
  const auto a = temp_path("syt_cli_a.json");
  const auto b = temp_path("syt_cli_b.json");
  const std::vector<std::string> base{"solve", "--lambda", "0.5", "--ell", "3", "--k", "2", "--grid", "256", "--out"};
  auto args = base;
  args.push_back(a);
  REQUIRE(run(args).code == cli::ok);
  args = base;
  args.push_back(b);
  REQUIRE(run(args).code == cli::ok);
  const std::string text = read_text_file(a);
  CHECK(text == read_text_file(b));
  const auto loaded = parse_solution_record(text);
  CHECK(check_solution(loaded.solution).ok);
  CHECK(solution_record(loaded) == text);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST_CASE("bifurcate and sweep commands") {
  auto r = run({"bifurcate", "--lambda", "1", "--ell", "1.6"});
  CHECK(r.code == cli::ok);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 5);
  CHECK(r.err.find("d=3") != std::string::npos);

  r = run({"bifurcate", "--lambda", "1", "--ell", "0.4", "--format", "json"});
  CHECK(r.code == cli::ok);
  CHECK(nlohmann::json::parse(r.out).at("branches").size() == 1);

  r = run({"sweep", "--lambda", "1", "--ell", "0.6,1,2,5,20"});
  CHECK(r.code == cli::ok);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 6);
  CHECK(r.err.find("increasing=yes") != std::string::npos);

  CHECK(run({"sweep", "--lambda", "1", "--ell", "0.3,1"}).code == cli::no_such_branch);
  CHECK(run({"sweep", "--lambda", "1", "--ell", "2,1"}).code == cli::domain_error);
}

TEST_CASE("galerkin command is deterministic") {
  const std::vector<std::string> args{"galerkin", "--lambda", "1", "--ell", "0.8", "--modes", "16",
                                      "--restarts", "2", "--seed", "5"};
  const auto a = run(args);
  const auto b = run(args);
  REQUIRE(a.code == cli::ok);
  CHECK(a.out == b.out);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j.at("format") == "syt-galerkin");
  CHECK(j.at("restarts_used").get<int>() >= 2);
}

TEST_CASE("verify command") {
  auto r = run({"verify", "--only", "bounds"});
  CHECK(r.code == cli::ok);
  CHECK(r.out.find("PASS") != std::string::npos);
  CHECK(r.out.find("bounds") != std::string::npos);

  r = run({"verify", "--only", "degenerate-period,scaling", "--tolerance", "1e-30"});
  CHECK(r.code == cli::verify_failed);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') >= 2);
  CHECK(r.out.find("FAIL") != std::string::npos);
  CHECK(r.out.find("measured=") != std::string::npos);

  CHECK(run({"verify", "--only", "no-such-criterion"}).code == cli::domain_error);
}

TEST_CASE("argument errors") {
  CHECK(run({}).code == cli::domain_error);
  CHECK(run({"period", "--K", "0.25", "--lambda", "-1"}).code == cli::domain_error);
  CHECK(run({"period"}).code == cli::domain_error);
  CHECK(run({"frobnicate"}).code == cli::domain_error);
  CHECK(run({"period", "--lambda", "1", "--K", "0.25", "--format", "xml"}).code == cli::domain_error);
  CHECK(run({"--help"}).code == cli::ok);
}
