#include "cli.hpp"

#include "syt/acceptance.hpp"
#include "syt/bifurcation_atlas.hpp"
#include "syt/errors.hpp"
#include "syt/galerkin.hpp"
#include "syt/period_kernel.hpp"
#include "syt/records.hpp"
#include "syt/torus_solver.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

namespace syt::cli {

namespace {

struct RunConfig {
  double lambda = 1.0;
  std::vector<double> ell{1.0};
  double K = 0.0;
  int k = 1;
  int grid = 1024;
  int modes = 64;
  int restarts = 8;
  std::uint64_t seed = 0;
  double tolerance = 1e-10;
  std::string out;
  std::string format = "json";
  std::vector<std::string> only;
};

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty())
    out << text;
  else
    write_text_file(cfg.out, text);
}

std::string line(std::initializer_list<std::pair<const char*, double>> fields) {
  std::string s;
  for (const auto& [name, value] : fields) {
    if (!s.empty()) s += ' ';
    s += name;
    s += '=';
    s += format_double(value);
  }
  return s + '\n';
}

int run_period(const RunConfig& cfg, std::ostream& out) {
  const ModelParams p = ModelParams::make(cfg.lambda, cfg.ell.front());
  const PeriodResult r = half_period(p, cfg.K, cfg.tolerance);
  if (cfg.format == "csv") {
    std::string text = "lambda,K,s0,s1,eta,err\n";
    text += format_double(cfg.lambda) + ',' + format_double(r.K) + ',' + format_double(r.s0) + ',' +
            format_double(r.s1) + ',' + format_double(r.eta) + ',' + format_double(r.err) + '\n';
    emit(cfg, text, out);
  } else if (!cfg.out.empty()) {
    std::ostringstream os;
    os << "{\n  \"format\": \"syt-period\",\n  \"lambda\": " << format_double(cfg.lambda)
       << ",\n  \"K\": " << format_double(r.K) << ",\n  \"s0\": " << format_double(r.s0)
       << ",\n  \"s1\": " << format_double(r.s1) << ",\n  \"eta\": " << format_double(r.eta)
       << ",\n  \"err\": " << format_double(r.err) << "\n}\n";
    write_text_file(cfg.out, os.str());
  }
  out << line({{"s0", r.s0}, {"s1", r.s1}, {"eta", r.eta}, {"err", r.err}});
  return ok;
}

std::string samples_csv(const SpinorField& field) {
  const TorusSolution& s = field.solution;
  std::string text = "t,f,g,u,v,psi1_re,psi1_im,psi2_re,psi2_im\n";
  for (int j = 0; j < s.n_grid(); ++j) {
    text += format_double(s.t[j]) + ',' + format_double(s.f[j]) + ',' + format_double(s.g[j]) + ',' +
            format_double(s.u[j]) + ',' + format_double(s.v[j]) + ',' + format_double(field.psi1[j].real()) +
            ',' + format_double(field.psi1[j].imag()) + ',' + format_double(field.psi2[j].real()) + ',' +
            format_double(field.psi2[j].imag()) + '\n';
  }
  return text;
}

int run_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ModelParams p = ModelParams::make(cfg.lambda, cfg.ell.front());
  if (cfg.k < 0) throw DomainError("k must be non-negative");
  TorusSolution s;
  if (cfg.k == 0) {
    s = constant_solution(p, cfg.grid);
  } else {
    const int d = branch_count(p);
    if (cfg.k > d) {
      std::ostringstream os;
      os << "no winding-" << cfg.k << " branch at lambda=" << cfg.lambda << ", ell=" << p.ell << ": d = " << d
         << ", so there are d+1 = " << d + 1 << " inequivalent solutions (constant";
      if (d >= 1) os << " and k = 1.." << d;
      os << ")";
      throw NoBranchError(os.str());
    }
    const BranchSolve b = solve_K(p, std::numbers::pi * p.ell / cfg.k);
    if (b.underflow) throw DomainError("K* underflows double precision (ln K = " + format_double(b.log_K) + ")");
    s = reconstruct(p, b.K, cfg.k, cfg.grid);
  }
  const SpinorField field = spinor_lift(s, 0.0);
  const std::string summary = line({{"K", s.K}, {"volume", s.volume}, {"residual_sup", s.residual_sup}});
  const std::string text = cfg.format == "csv" ? samples_csv(field) : solution_record(field);
  if (cfg.out.empty()) {
    out << text;
    err << summary;
  } else {
    write_text_file(cfg.out, text);
    out << summary;
  }
  return ok;
}

int run_bifurcate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ModelParams p = ModelParams::make(cfg.lambda, cfg.ell.front());
  const BifurcationDiagram d = enumerate(p);
  std::string notes;
  if (d.d >= 1) {
    const BoundReport rep = check_bounds(d);
    for (const auto& c : rep.checks) notes += "bound " + c.inequality + ": margin " + format_double(c.margin) + '\n';
  }
  emit(cfg, cfg.format == "csv" ? diagram_csv(d) : diagram_json(d), out);
  (cfg.out.empty() ? err : out) << "d=" << d.d << " branches=" << d.branches.size() << '\n' << notes;
  return ok;
}

int run_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ModelParams base = ModelParams::make(cfg.lambda, cfg.ell.front());
  const std::vector<SweepRow> rows = volume_sweep(base, cfg.ell);
  emit(cfg, cfg.format == "csv" ? sweep_csv(cfg.lambda, rows) : sweep_json(cfg.lambda, rows), out);
  (cfg.out.empty() ? err : out) << "rows=" << rows.size()
                                << " increasing=" << (sweep_is_increasing(rows) ? "yes" : "no") << '\n';
  return ok;
}

int run_galerkin(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ModelParams p = ModelParams::make(cfg.lambda, cfg.ell.front());
  const GalerkinModel model(p, cfg.modes);
  const GalerkinResult r = model.minimize(cfg.restarts, cfg.seed);
  std::string text;
  if (cfg.format == "csv") {
    auto [p1, p2] = model.to_grid(r.state, model.grid_size());
    text = "t,density,psi1_re,psi1_im,psi2_re,psi2_im\n";
    for (int j = 0; j < model.grid_size(); ++j) {
      const double t = 2.0 * std::numbers::pi * p.ell * j / model.grid_size();
      text += format_double(t) + ',' + format_double(std::norm(p1[j]) + std::norm(p2[j])) + ',' +
              format_double(p1[j].real()) + ',' + format_double(p1[j].imag()) + ',' + format_double(p2[j].real()) +
              ',' + format_double(p2[j].imag()) + '\n';
    }
  } else {
    text = galerkin_record(model, r);
  }
  emit(cfg, text, out);
  (cfg.out.empty() ? err : out) << line({{"energy", r.energy},
                                         {"gradient_norm", r.gradient_norm},
                                         {"nehari_residual", r.nehari_residual},
                                         {"restarts_used", double(r.restarts_used)}});
  return ok;
}

int run_verify(const RunConfig& cfg, bool tolerance_given, std::ostream& out) {
  AcceptanceOptions opt;
  if (tolerance_given) opt.tolerance = cfg.tolerance;
  opt.only = cfg.only;
  const auto results = run_acceptance(opt);
  int failed = 0;
  std::string text;
  for (const auto& r : results) {
    text += format_result(r) + '\n';
    if (!r.passed) ++failed;
  }
  text += std::to_string(results.size() - failed) + "/" + std::to_string(results.size()) + " criteria passed\n";
  out << text;
  if (!cfg.out.empty()) write_text_file(cfg.out, text);
  return failed ? verify_failed : ok;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Periodic solutions of the spinorial Yamabe equation on flat tori"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto positive = CLI::PositiveNumber;
  auto add_lambda = [&](CLI::App* sc) { sc->add_option("--lambda", cfg.lambda, "Dirac eigenvalue lambda > 0")->check(positive); };
  auto add_ell = [&](CLI::App* sc, bool required) {
    auto* o = sc->add_option("--ell", cfg.ell, "circle factor ell > 0")->expected(1)->check(positive);
    if (required) o->required();
  };
  std::string format;
  auto add_output = [&](CLI::App* sc, const char* default_format) {
    sc->add_option("--out", cfg.out, "output file (default: standard output)");
    sc->add_option("--format", format, std::string("json or csv (default ") + default_format + ")")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  CLI::App* period = app.add_subcommand("period", "half-period eta_K(s1) and the roots s0, s1");
  add_lambda(period);
  period->add_option("--K", cfg.K, "first-integral constant in (0, lambda/2]")->required();
  period->add_option("--tolerance", cfg.tolerance, "absolute quadrature tolerance")->check(positive);
  add_output(period, "json");

  CLI::App* solve = app.add_subcommand("solve", "reconstruct the winding-k solution and write its record");
  add_lambda(solve);
  add_ell(solve, true);
  solve->add_option("--k", cfg.k, "winding number (0 = constant branch)")->required();
  solve->add_option("--grid", cfg.grid, "number of samples")->check(CLI::Range(64, 1 << 22));
  add_output(solve, "json");

  CLI::App* bifurcate = app.add_subcommand("bifurcate", "all branches at (lambda, ell) with bound margins");
  add_lambda(bifurcate);
  add_ell(bifurcate, true);
  add_output(bifurcate, "csv");

  CLI::App* sweep = app.add_subcommand("sweep", "k = 1 volume along an increasing ell grid");
  add_lambda(sweep);
  sweep->add_option("--ell", cfg.ell, "increasing ell values")->required()->delimiter(',')->check(positive);
  add_output(sweep, "csv");

  CLI::App* galerkin = app.add_subcommand("galerkin", "variational ground state by Fourier-Galerkin descent");
  add_lambda(galerkin);
  add_ell(galerkin, true);
  galerkin->add_option("--modes", cfg.modes, "truncation N (modes |n| <= N)")->check(CLI::Range(16, 4096));
  galerkin->add_option("--restarts", cfg.restarts, "random restarts")->check(CLI::Range(1, 10000));
  galerkin->add_option("--seed", cfg.seed, "seed of the random restarts");
  add_output(galerkin, "json");

  CLI::App* verify = app.add_subcommand("verify", "run the acceptance criteria");
  CLI::Option* tol_opt =
      verify->add_option("--tolerance", cfg.tolerance, "override every error tolerance")->check(positive);
  verify->add_option("--only", cfg.only, "criterion keys to run")->delimiter(',');
  verify->add_option("--out", cfg.out, "also write the table to this file");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return domain_error;
  }

  cfg.format = !format.empty() ? format : (bifurcate->parsed() || sweep->parsed()) ? "csv" : "json";
  try {
    if (period->parsed()) return run_period(cfg, out);
    if (solve->parsed()) return run_solve(cfg, out, err);
    if (bifurcate->parsed()) return run_bifurcate(cfg, out, err);
    if (sweep->parsed()) return run_sweep(cfg, out, err);
    if (galerkin->parsed()) return run_galerkin(cfg, out, err);
    if (verify->parsed()) return run_verify(cfg, tol_opt->count() > 0, out);
  } catch (const NoBranchError& e) {
    err << "error: " << e.what() << '\n';
    return no_such_branch;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return domain_error;
  } catch (const DegenerateError& e) {
    err << "error: " << e.what() << '\n';
    return domain_error;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return verify_failed;
  }
  return domain_error;
}

} // namespace syt::cli
